//! Shifting rotations, stabilizing homotopies, the Bott involution and the
//! linearization families.

mod bott;
mod conjugate;
mod keylemma;
mod linearize;
mod path;
mod rotation;

pub use bott::{bott, bott_in, bott_invert, bott_middle, InvertMode};
pub use conjugate::{graded_conjugate, recover_entry, rot_conjugate, stabilize, vsymbol};
pub use keylemma::{coisometry_entry, key_lemma_suite, rank_one_display, shift_display, shift_entry};
pub use linearize::{
    eval_v, invert_v, k_end_display, k_start_display, lambda_vq, linearize_k, linearize_k_unit, linearize_u,
    linearize_u_unit, multiplicativity, qhat_symmetry_check, u_end_display, vconst_op, vscalar,
};
pub use path::{HomotopyPath, Unit};
pub use rotation::{geometric_tail_sum, ShiftingRotation, Variant};
pub(crate) use conjugate::put;
