use super::zop::ZOp;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// An operator together with the witness P·P = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionOp<E: Ring> {
    op: ZOp<E>,
}

impl<E: Ring> InvolutionOp<E> {
    pub fn new(op: ZOp<E>) -> Result<Self> {
        if !op.mul(&op).is_one() {
            return Err(Error::NotInvolution);
        }
        Ok(InvolutionOp { op })
    }

    /// Q = diag(−1 on negatives, 1 on ℕ).
    pub fn q(ctx: &E::Ctx) -> Self {
        let one = E::one(ctx);
        InvolutionOp { op: ZOp::split_diag(one.neg(), one) }
    }

    pub fn op(&self) -> &ZOp<E> {
        &self.op
    }

    pub fn into_op(self) -> ZOp<E> {
        self.op
    }
}

/// Λ(x, Q) = diag(x on negatives, 1 on ℕ) for x commuting with the entries.
pub fn lambda_q<E: Ring>(x: E) -> ZOp<E> {
    let one = x.one_like();
    ZOp::split_diag(x, one)
}

/// Q as a plain operator.
pub fn q_op<E: Ring>(ctx: &E::Ctx) -> ZOp<E> {
    InvolutionOp::q(ctx).into_op()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{lambda_mix, Loop};
    use crate::scalar::{Mat, Rational, Scalar, VLaurent};

    #[test]
    fn lambda_matches_mixer_formula() {
        let v = Mat::scalar(1, VLaurent::<Rational>::vpow(1));
        let q = q_op(&1);
        let lam = lambda_mix(&ZOp::laurent_op(Loop::constant(v.clone())), &q);
        assert_eq!(lam, lambda_q(v));
        let any = ZOp::unit(2, -1, Mat::scalar(1, <VLaurent<Rational> as Scalar>::from_int(3)));
        assert!(lambda_mix(&any, &ZOp::identity(&1)).is_one());
        assert!(lambda_mix(&ZOp::identity(&1), &any).is_one());
        assert!(InvolutionOp::new(q).is_ok());
        assert_eq!(InvolutionOp::new(any).unwrap_err(), Error::NotInvolution);
    }
}
