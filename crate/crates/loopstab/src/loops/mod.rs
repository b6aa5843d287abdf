//! Cyclic loops: finite Laurent polynomials over a coefficient ring.

mod cyclic;
mod decomp;
mod unit;

pub use cyclic::{at_v, lambda_mix, lift_loop, mixer, Loop};
pub use decomp::{FinitenessClass, LoopDecomposition, Tag, Window};
pub use unit::{Generator, LoopUnit, RLoop, RMat};
