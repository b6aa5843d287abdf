//! Exact structured operators for cyclic-loop linearization, Toeplitz
//! stabilization and finite linearization, with a dense rational oracle.

pub mod error;
pub mod finite_linearize;
pub mod homotopies;
pub mod json;
pub mod loops;
pub mod operators;
pub mod oracle;
pub mod random;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod toeplitz_contract;

pub use error::{Error, Result};
