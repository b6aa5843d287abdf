//! Exact coefficient arithmetic.

mod circle;
mod mat;
mod poly;
mod rational;
mod ring;
mod vlaurent;

pub use circle::{pythagorean_grid, CirclePoint, CircleScalar, Coords};
pub use mat::Mat;
pub use poly::{Poly, RatFunc};
pub use rational::Rational;
pub use ring::{Adjoint, Field, Ring, Scalar};
pub use vlaurent::VLaurent;

/// Matrices whose entries are Laurent polynomials in v over `S`.
pub type VMat<S> = Mat<VLaurent<S>>;

/// Lift a rational matrix into the v-ring over `S` as a constant.
pub fn vconst<S: Scalar>(m: &Mat<Rational>) -> VMat<S> {
    m.map(|x| VLaurent::constant(S::from_rational(x)))
}

/// Embed an `S`-matrix into the v-ring as a constant.
pub fn vlift<S: Scalar>(m: &Mat<S>) -> VMat<S> {
    m.map(|x| VLaurent::constant(x.clone()))
}
