//! Dense truncated realizations for cross-checking the structured engine.

mod dense;
mod series;

pub use dense::{dense_chain, dense_mul, truncate, Bindings, Dense, DenseNum, DenseWindow, Leaf};
pub use series::{l_only_k_residuals, rotation_window, truncated_loop_inverse, TruncatedInverse};
