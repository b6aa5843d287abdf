use crate::error::{Error, Result};
use crate::loops::{lift_loop, Loop, LoopUnit, RMat};
use crate::operators::{q_op, InvolutionOp, ZOp};
use crate::scalar::{Mat, Rational, Ring, Scalar};

/// B(a) = U(a)QU(a)⁻¹.
pub fn bott(a: &LoopUnit) -> InvolutionOp<RMat> {
    bott_in::<Rational>(a)
}

/// B(a) with entries in another scalar ring.
pub fn bott_in<S: Scalar>(a: &LoopUnit) -> InvolutionOp<Mat<S>> {
    let d = a.dim();
    let u = ZOp::laurent_op(lift_loop::<S>(&a.forward));
    let ui = ZOp::laurent_op(lift_loop::<S>(&a.inverse));
    let b = u.mul(&q_op(&d)).mul(&ui);
    InvolutionOp::new(b).expect("conjugate of an involution")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvertMode {
    /// z₂ = 1: recovers a(z)a(1)⁻¹.
    Z1,
    /// z₁ = 1: recovers a(1)a(z)⁻¹.
    Z2,
}

/// ½(B − U(z)BU(z⁻¹)), a finite matrix when B is a finite perturbation of Q.
pub fn bott_middle<E: Ring>(b: &ZOp<E>) -> Result<ZOp<E>> {
    let ctx = b.entry_ctx();
    let q = q_op::<E>(&ctx);
    if b.laurent() != q.laurent() || b.half() != q.half() {
        return Err(Error::NotAPerturbation);
    }
    let z = ZOp::laurent_op(Loop::z(&ctx, 1));
    let zi = ZOp::laurent_op(Loop::z(&ctx, -1));
    let m = b.sub(&z.mul(b).mul(&zi)).scale_q(&Rational::new(1, 2));
    debug_assert!(m.is_finite());
    Ok(m)
}

/// Contract ½(B − U(z)BU(z⁻¹)) against the monomial row and column vectors.
pub fn bott_invert<E: Ring>(b: &ZOp<E>, mode: InvertMode) -> Result<Loop<E>> {
    let m = bott_middle(b)?;
    let ctx = b.entry_ctx();
    let mut out = Loop::zero(&ctx);
    for (&(n, k), x) in m.finite() {
        let e = match mode {
            InvertMode::Z1 => n,
            InvertMode::Z2 => -k,
        };
        out.add_term(e, x);
    }
    Ok(out)
}
