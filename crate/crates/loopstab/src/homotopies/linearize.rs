use super::bott::bott_in;
use super::conjugate::{graded_conjugate, put, vmono, vsymbol};
use super::path::Unit;
use super::rotation::ShiftingRotation;
use crate::error::Result;
use crate::loops::{at_v, lambda_mix, lift_loop, Loop, LoopUnit};
use crate::operators::{Toeplitz, ZOp};
use crate::report::Check;
use crate::scalar::{vlift, Mat, Ring, Scalar, VLaurent, VMat};

/// Substitute a value for v.
pub fn eval_v<S: Scalar>(op: &ZOp<VMat<S>>, w: &S) -> ZOp<Mat<S>> {
    let d = op.entry_ctx();
    op.map(&d, |m| m.map(|e| e.eval(w)))
}

/// v ↦ v⁻¹.
pub fn invert_v<S: Scalar>(op: &ZOp<VMat<S>>) -> ZOp<VMat<S>> {
    let d = op.entry_ctx();
    op.map(&d, |m| m.map(|e| e.invert_var()))
}

/// An operator over `S` as a v-constant.
pub fn vconst_op<S: Scalar>(op: &ZOp<Mat<S>>) -> ZOp<VMat<S>> {
    let d = op.entry_ctx();
    op.map(&d, vlift)
}

pub fn vscalar<S: Scalar>(d: usize, k: i64) -> VMat<S> {
    Mat::scalar(d, VLaurent::vpow(k))
}

/// Λ(vᵏ, Q): vᵏ on the negative half, 1 on ℕ.
pub fn lambda_vq<S: Scalar>(d: usize, k: i64) -> ZOp<VMat<S>> {
    ZOp::split_diag(vscalar(d, k), vscalar(d, 0))
}

/// U(a, θ, v) = δ₊a(v)e₀₀ + δ₋a(−v)e₀₀ + G(θ,v)U(a)G†(θ,v).
pub fn linearize_u<S: Scalar>(rot: &ShiftingRotation<S>, a: &Loop<Mat<S>>) -> ZOp<VMat<S>> {
    let d = *a.coeff_ctx();
    let one = S::scalar_one();
    let mut fin = graded_conjugate(rot, &Toeplitz::w(a.clone())).finite().clone();
    for (&n, c) in a.terms() {
        if n > 0 {
            // rows of ℕ against columns −n..−1: V⁻¹RV·U^{+−}
            for i in 0..n {
                for (r, x) in rot.column(i) {
                    put(&mut fin, (r, i - n), vmono(c, &x, i - r));
                }
                put(&mut fin, (i, i - n), vmono(c, &one, 0).neg());
            }
        } else if n < 0 {
            // rows −m..−1 against ℕ: U^{−+}·V⁻¹R′V
            let m = -n;
            for j in 0..m {
                for (col, x) in rot.row(j) {
                    put(&mut fin, (j - m, col), vmono(c, &x, col - j));
                }
                put(&mut fin, (j - m, j), vmono(c, &one, 0).neg());
            }
        }
    }
    ZOp::new(vsymbol(a), Loop::zero(&d), fin)
}

/// U(a, θ, 1) with its inverse U(a⁻¹, θ, 1).
pub fn linearize_u_unit<S: Scalar>(rot: &ShiftingRotation<S>, a: &LoopUnit) -> Unit<ZOp<Mat<S>>> {
    let one = S::scalar_one();
    Unit {
        forward: eval_v(&linearize_u(rot, &lift_loop(&a.forward)), &one),
        inverse: eval_v(&linearize_u(rot, &lift_loop(&a.inverse)), &one),
    }
}

/// K(a, θ, v) = Λ(v,Q)⁻¹U(a,θ,v)Λ(v,Q)U(a,θ,1)⁻¹.
pub fn linearize_k<S: Scalar>(rot: &ShiftingRotation<S>, a: &LoopUnit) -> ZOp<VMat<S>> {
    let d = a.dim();
    let u = linearize_u(rot, &lift_loop(&a.forward));
    let u1_inv = vconst_op(&linearize_u_unit(rot, a).inverse);
    lambda_vq::<S>(d, -1).mul(&u).mul(&lambda_vq(d, 1)).mul(&u1_inv)
}

/// K(a, θ, v) with its inverse U(a,θ,1)Λ(v,Q)⁻¹U(a⁻¹,θ,v)Λ(v,Q).
pub fn linearize_k_unit<S: Scalar>(rot: &ShiftingRotation<S>, a: &LoopUnit) -> Unit<ZOp<VMat<S>>> {
    let d = a.dim();
    let u1 = vconst_op(&linearize_u_unit(rot, a).forward);
    let ui = linearize_u(rot, &lift_loop(&a.inverse));
    Unit {
        forward: linearize_k(rot, a),
        inverse: u1.mul(&lambda_vq(d, -1)).mul(&ui).mul(&lambda_vq(d, 1)),
    }
}

/// Λ(v,Q)⁻¹Λ(v,B(a)), the value of K at θ = 0.
pub fn k_start_display<S: Scalar>(a: &LoopUnit) -> ZOp<VMat<S>> {
    let d = a.dim();
    let b = vconst_op(bott_in::<S>(a).op());
    let v = ZOp::laurent_op(Loop::constant(vscalar::<S>(d, 1)));
    lambda_vq::<S>(d, -1).mul(&lambda_mix(&v, &b))
}

/// E_ℤ(a(v)a(1)⁻¹), the value of K at θ = π/2.
pub fn k_end_display<S: Scalar>(a: &LoopUnit) -> ZOp<VMat<S>> {
    let fa = lift_loop::<S>(&a.forward);
    let c = vlift(&lift_loop::<S>(&a.inverse).eval_sign(1));
    ZOp::corner(&at_v(&fa, 1).mul(&c))
}

/// The θ = π/2 block display: W(a(z⁻¹)) and W(a(z)) on the diagonal with
/// a(v) inserted at the corner and the off-diagonal stripes −vY, −v⁻¹Y shifted
/// past it.
pub fn u_end_display<S: Scalar>(a: &Loop<Mat<S>>) -> ZOp<VMat<S>> {
    let d = *a.coeff_ctx();
    let one = Loop::one(&d);
    let down = ZOp::new(one.clone(), Loop::monomial(1, vscalar::<S>(d, -1)).neg().sub(&one), Default::default());
    let up = ZOp::new(one.clone(), Loop::monomial(-1, vscalar::<S>(d, 1)).neg().sub(&one), Default::default());
    let u = ZOp::laurent_op(vsymbol(a));
    ZOp::unit(0, 0, at_v(a, 1)).add(&down.mul(&u).mul(&up))
}

/// Q̂U(a)Q̂ = U(a(z⁻¹)) and Q̂U(a,θ,v)Q̂ = U(a(z⁻¹),θ,v⁻¹).
pub fn qhat_symmetry_check<S: Scalar>(rot: &ShiftingRotation<S>, a: &Loop<Mat<S>>, label: &str) -> Vec<Check> {
    let plain = ZOp::laurent_op(a.clone()).conj_qhat() == ZOp::laurent_op(a.reflect());
    let lhs = linearize_u(rot, a).conj_qhat();
    let rhs = invert_v(&linearize_u(rot, &a.reflect()));
    vec![
        Check::new("qhat.laurent", label, plain),
        Check::new("qhat.linearized", label, lhs == rhs),
    ]
}

/// U(a,θ,v)·U(a⁻¹,θ,v) = 1 and U(ab) = U(a)U(b) at one point.
pub fn multiplicativity<S: Scalar>(rot: &ShiftingRotation<S>, a: &LoopUnit, b: &LoopUnit) -> Result<bool> {
    let (fa, fb) = (lift_loop::<S>(&a.forward), lift_loop::<S>(&b.forward));
    let lhs = linearize_u(rot, &fa.mul(&fb));
    let rhs = linearize_u(rot, &fa).mul(&linearize_u(rot, &fb));
    let inv = linearize_u(rot, &fa).mul(&linearize_u(rot, &lift_loop(&a.inverse)));
    Ok(lhs == rhs && inv.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::Variant;
    use crate::loops::{Generator, RMat};
    use crate::operators::q_op;
    use crate::scalar::{CirclePoint, CircleScalar, Rational};

    type C = CircleScalar;

    fn z_unit(d: usize) -> LoopUnit {
        let one = Mat::scalar(d, Rational::one());
        LoopUnit::build(d, &[Generator::Monomial { k: 1, c: one.clone(), c_inv: one }]).unwrap()
    }

    fn mixer_unit() -> LoopUnit {
        let q: RMat = Mat::from_ints(&[&[1, 0], &[2, -1]]);
        LoopUnit::build(2, &[Generator::Mixer { power: 1, q }]).unwrap()
    }

    fn sym() -> ShiftingRotation<C> {
        ShiftingRotation::<C>::at(&CirclePoint::Symbolic, Variant::Unitary)
    }

    #[test]
    fn shift_table_first_row() {
        let z3 = Loop::z(&1, 3);
        let u = linearize_u(&sym(), &lift_loop::<C>(&z3));
        let (t, s) = (C::t(), C::s());
        let e = |i, j| u.entry(i, j).get(0, 0).clone();
        let vm = |k: i64, x: C| VLaurent::monomial(k, x);
        assert_eq!(e(0, -3), vm(0, s.clone()));
        assert_eq!(e(0, -2), vm(1, t.mul(&s)));
        assert_eq!(e(0, -1), vm(2, t.mul(&t).mul(&s)));
        assert_eq!(e(0, 0), vm(3, t.pow(3)));
        assert_eq!(e(1, -3), vm(-1, t.neg()));
        assert_eq!(e(1, -2), vm(0, s.mul(&s)));
        assert_eq!(e(3, -1), vm(-1, t.neg()));
        assert_eq!(e(3, 0), vm(0, s.clone()));
        assert_eq!(e(4, 1), vm(0, C::one(&())));
        assert_eq!(e(-1, -4), vm(0, C::one(&())));
        let zi = linearize_u(&sym(), &lift_loop::<C>(&Loop::z(&1, -3)));
        let f = |i, j| zi.entry(i, j).get(0, 0).clone();
        assert_eq!(f(-3, 0), vm(0, s.clone()));
        assert_eq!(f(-3, 1), vm(1, t.neg()));
        assert_eq!(f(-1, 0), vm(-2, t.mul(&t).mul(&s)));
        assert_eq!(f(0, 0), vm(-3, t.pow(3)));
        assert_eq!(f(0, 3), vm(0, s));
    }

    #[test]
    fn endpoints_of_u() {
        let a = mixer_unit().mul(&z_unit(2).inv());
        let fa = lift_loop::<C>(&a.forward);
        let start = ShiftingRotation::<C>::at(&CirclePoint::start(), Variant::Unitary);
        assert_eq!(linearize_u(&start, &fa), ZOp::laurent_op(vsymbol(&fa)));
        let end = ShiftingRotation::<C>::at(&CirclePoint::end(), Variant::Unitary);
        assert_eq!(linearize_u(&end, &fa), u_end_display(&fa));
        assert!(multiplicativity(&sym(), &a, &mixer_unit()).unwrap());
    }

    #[test]
    fn k_endpoints_and_mixer_constant() {
        let a = mixer_unit();
        let start = ShiftingRotation::<C>::at(&CirclePoint::start(), Variant::Unitary);
        let end = ShiftingRotation::<C>::at(&CirclePoint::end(), Variant::Unitary);
        assert_eq!(linearize_k(&start, &a), k_start_display::<C>(&a));
        assert_eq!(linearize_k(&end, &a), k_end_display::<C>(&a));
        assert_eq!(linearize_k(&sym(), &a), k_end_display::<C>(&a));
        let k = linearize_k_unit(&sym(), &z_unit(1));
        assert!(k.verify());
        assert!(eval_v(&k.forward, &C::one(&())).is_one());
        assert_eq!(lambda_vq::<C>(1, 1).mul(&lambda_vq(1, -1)), q_op(&1).mul(&q_op(&1)).map(&1, vlift));
    }

    #[test]
    fn qhat() {
        let a = mixer_unit().mul(&z_unit(2));
        for c in qhat_symmetry_check(&sym(), &lift_loop::<C>(&a.forward), "sym") {
            assert!(c.pass, "{c:?}");
        }
    }
}
