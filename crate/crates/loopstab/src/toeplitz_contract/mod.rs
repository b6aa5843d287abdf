//! Contractibility of the stabilized Toeplitz unit group: the symbol
//! killing homotopy, the maps L and L̃, and the two rotation steps.

mod block2;
mod lmap;
mod steps;
mod units;

pub use block2::Block2;
pub use lmap::{
    corner_loop, l_display, l_inflate, l_inflate_unit, l_op, l_unit, lambda_loop, symbol_section, twisted_loop, QSplit,
    Section,
};
pub use steps::{contract_step_b, contract_step_c, step_b_q, step_b_s, step_b_start_symbol};
pub use units::{killer_end_display, symbol_invariant, symbol_killer, toeplitz_homotopy, TGen, ToeplitzUnit};
