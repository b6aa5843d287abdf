use std::fmt::Debug;

use super::Rational;

/// Associative ring with unit. Elements know their shape through `Ctx`
/// (matrix size, nothing for scalars) so zero and one can be built generically.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplication by a rational constant.
    fn scale_q(&self, q: &Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx())
    }

    fn one_like(&self) -> Self {
        Self::one(&self.ctx())
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Commutative coefficient ring carrying ½, a partial inverse and a conjugation.
pub trait Scalar: Ring<Ctx = ()> {
    fn from_rational(q: &Rational) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn half() -> Self {
        Self::from_rational(&Rational::new(1, 2))
    }

    fn scalar_zero() -> Self {
        Self::zero(&())
    }

    fn scalar_one() -> Self {
        Self::one(&())
    }
}

/// Scalars where every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }
}

/// Formal adjoint: transpose combined with the entry conjugation.
pub trait Adjoint {
    fn adjoint(&self) -> Self;
}
