//! Finite linearization of algebraically finite loops: stripe perturbations,
//! the reduction Red, interpolation paths and the H- and Q-towers.

mod checks;
mod stripe;
mod tower;

pub use checks::finite_suite;
pub use stripe::{fits, lambda_base, path_inverse, reduce_op, stripe_inverse, Kind, StripePerturbation};
pub use tower::{
    b_f, band_growth, k_f, k_of_product, linearized_stripes, q_tower, tower, u_f, u_f_plain, QTower, TowerState,
};
