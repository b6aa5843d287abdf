//! Structured exact representations of infinite matrices.

mod block;
mod index;
mod involution;
mod toeplitz;
mod zop;

pub use block::{hankel_y, BlockView};
pub use index::{cantor, cantor_inv, pair, relabel, shift_first, unpair, Idx, IndexSet};
pub use involution::{lambda_q, q_op, InvolutionOp};
pub use toeplitz::Toeplitz;
pub use zop::{FMap, ZOp};
pub(crate) use zop::invert_one_plus;
