use super::block2::Block2;
use super::lmap::{l_unit, lambda_loop};
use crate::homotopies::Unit;
use crate::loops::{lift_loop, Loop, LoopUnit};
use crate::operators::{hankel_y, BlockView, Toeplitz, ZOp};
use crate::scalar::{Mat, Ring, Scalar};

type Op<S> = ZOp<Mat<S>>;
type B2<S> = Block2<Op<S>>;

fn sd<S: Scalar>(d: usize, minus: &S, plus: &S) -> Op<S> {
    ZOp::split_diag(Mat::scalar(d, minus.clone()), Mat::scalar(d, plus.clone()))
}

/// The rotation pairing N̄₁ with ℕ₂, in coordinates where the second line
/// is stored reflected so both halves meet on the negative diagonal.
fn rot_b<S: Scalar>(d: usize, t: &S, s: &S) -> B2<S> {
    let (one, zero) = (S::scalar_one(), S::scalar_zero());
    Block2::new(sd(d, s, &one), sd(d, &t.neg(), &zero), sd(d, t, &zero), sd(d, s, &one))
}

/// U(b) carried by ℕ₁ (as the negative half) and N̄₂ (as the positive half).
fn crossed<S: Scalar>(b: &Loop<Mat<S>>) -> B2<S> {
    let d = *b.coeff_ctx();
    let bv = BlockView::of(&ZOp::laurent_op(b.clone()));
    let one = Loop::one(&d);
    let place = |t: &Toeplitz<Mat<S>>| ZOp::new(one.clone(), t.symbol().sub(&one), t.finite().clone());
    Block2::new(
        place(&bv.mm),
        ZOp::finite_op(&d, hankel_y(b)),
        ZOp::finite_op(&d, hankel_y(&b.reflect())),
        place(&bv.pp),
    )
}

/// A Toeplitz operator on ℕ₁ and the same pattern on ℕ₂ (the reflected negative half).
fn on_n<S: Scalar>(t: &Toeplitz<Mat<S>>) -> Op<S> {
    let one = Loop::one(t.symbol().coeff_ctx());
    ZOp::new(one.clone(), t.symbol().sub(&one), t.finite().clone())
}

/// Q = (−1, −1 ‖ −1, 1) on (N̄₁, ℕ₁ ‖ N̄₂, ℕ₂).
pub fn step_b_q<S: Scalar>(d: usize) -> B2<S> {
    let one = S::scalar_one();
    Block2::diag(ZOp::identity(&d).neg(), sd(d, &one, &one.neg()))
}

/// S(θ) = R(θ)·diag(1,1,U(a))·[U(a⁻¹) across ℕ₁, N̄₂]·diag(1,A,1,A⁻¹)·R(θ)ᵀ.
pub fn step_b_s<S: Scalar>(t: &S, s: &S, a: &LoopUnit, inner: &Unit<Toeplitz<Mat<S>>>) -> Unit<B2<S>> {
    let d = a.dim();
    let (fa, ia) = (lift_loop::<S>(&a.forward), lift_loop::<S>(&a.inverse));
    let id = ZOp::identity(&d);
    let m1 = |x: &Loop<Mat<S>>| Block2::diag(id.clone(), ZOp::laurent_op(x.clone()).reflect_halves());
    let m4 = |x: &Toeplitz<Mat<S>>, y: &Toeplitz<Mat<S>>| Block2::diag(on_n(x), on_n(y).reflect_halves());
    let (rl, rr) = (rot_b(d, t, s), rot_b(d, &t.neg(), s));
    let forward = rl
        .mul(&m1(&fa))
        .mul(&crossed(&ia.reflect()))
        .mul(&m4(&inner.forward, &inner.inverse))
        .mul(&rr);
    let inverse = rl
        .mul(&m4(&inner.inverse, &inner.forward))
        .mul(&crossed(&fa.reflect()))
        .mul(&m1(&ia))
        .mul(&rr);
    Unit { forward, inverse }
}

/// L(−Q, S(θ))·S(θ)⁻¹ with its inverse S(θ)·L(−Q, S(θ)⁻¹).
pub fn contract_step_b<S: Scalar>(
    t: &S,
    s: &S,
    a: &LoopUnit,
    inner: &Unit<Toeplitz<Mat<S>>>,
) -> Unit<Toeplitz<B2<S>>> {
    let sm = step_b_s(t, s, a, inner);
    let nq = step_b_q::<S>(a.dim()).neg();
    let w = |x: &B2<S>| Toeplitz::w(Loop::constant(x.clone()));
    Unit {
        forward: l_unit(&nq, &sm.forward).mul(&w(&sm.inverse)),
        inverse: w(&sm.forward).mul(&l_unit(&nq, &sm.inverse)),
    }
}

/// diag(1, Λ(z⁻¹,Q)U(a)Λ(z,Q)U(a)⁻¹), the symbol at θ = 0.
pub fn step_b_start_symbol<S: Scalar>(a: &LoopUnit) -> Loop<B2<S>> {
    let d = a.dim();
    let q = sd::<S>(d, &S::scalar_one().neg(), &S::scalar_one());
    let u = |x: &Loop<Mat<S>>| Loop::constant(ZOp::laurent_op(x.clone()));
    let x = lambda_loop(&q, -1)
        .mul(&u(&lift_loop(&a.forward)))
        .mul(&lambda_loop(&q, 1))
        .mul(&u(&lift_loop(&a.inverse)));
    let mut out = Loop::zero(&d);
    for (n, c) in x.terms() {
        let id = if *n == 0 { ZOp::identity(&d) } else { ZOp::zero(&d) };
        out.add_term(*n, &Block2::diag(id, c.reflect_halves()));
    }
    out
}

/// k(θ)·L(Q, k(θ))⁻¹ for k = diag(k₀, 1) on ℕ₁ ⊔ ℕ₂ with Q = diag(−1, 1),
/// where ℤ is read as ℕ⊔ℕ through −1−n ↦ (1, n), n ↦ (2, n).
pub fn contract_step_c<S: Scalar>(
    t: &S,
    s: &S,
    k0: &Unit<Toeplitz<Mat<S>>>,
) -> Unit<Toeplitz<Block2<Toeplitz<Mat<S>>>>> {
    let d = *k0.forward.symbol().coeff_ctx();
    let c = |x: &S| Toeplitz::w(Loop::constant(Mat::scalar(d, x.clone())));
    let rot = |t: &S| Block2::new(c(s), c(t), c(&t.neg()), c(s));
    let one = Toeplitz::identity(&d);
    let kt = |k: &Toeplitz<Mat<S>>| rot(t).mul(&Block2::diag(k.clone(), one.clone())).mul(&rot(&t.neg()));
    let (kf, ki) = (kt(&k0.forward), kt(&k0.inverse));
    let q = Block2::diag(one.neg(), one.clone());
    let w = |x: &Block2<Toeplitz<Mat<S>>>| Toeplitz::w(Loop::constant(x.clone()));
    Unit { forward: w(&kf).mul(&l_unit(&q, &ki)), inverse: l_unit(&q, &kf).mul(&w(&ki)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::Generator;
    use crate::scalar::{CircleScalar, Rational};
    use crate::toeplitz_contract::units::{TGen, ToeplitzUnit};

    type C = CircleScalar;

    fn rm(r: &[&[i64]]) -> Mat<Rational> {
        Mat::from_ints(r)
    }

    fn loop_a() -> LoopUnit {
        LoopUnit::build(
            2,
            &[
                Generator::Mixer { power: 1, q: rm(&[&[1, 2], &[0, -1]]) },
                Generator::Monomial { k: -1, c: rm(&[&[0, 1], &[1, 0]]), c_inv: rm(&[&[0, 1], &[1, 0]]) },
            ],
        )
        .unwrap()
    }

    fn inner() -> ToeplitzUnit {
        let u = rm(&[&[1, 1], &[0, 1]]);
        ToeplitzUnit::build(2, &[TGen::Corner { u: u.clone(), u_inv: u.try_inverse().unwrap() }]).unwrap()
    }

    #[test]
    fn step_b_endpoints() {
        let a = loop_a();
        let inner = inner().lift::<Rational>();
        let (z, o) = (Rational::zero(), Rational::one());
        let st = contract_step_b(&z, &o, &a, &inner);
        assert_eq!(*st.forward.symbol(), step_b_start_symbol::<Rational>(&a));
        let en = contract_step_b(&o, &z, &a, &inner);
        assert!(en.forward.symbol().is_one());
        let mid = contract_step_b(&Rational::new(3, 5), &Rational::new(4, 5), &a, &inner);
        assert!(step_b_s(&Rational::new(3, 5), &Rational::new(4, 5), &a, &inner).verify());
        assert!(mid.verify());
    }

    #[test]
    fn step_c_endpoints() {
        let k0 = inner().lift::<C>();
        let (z, o) = (C::zero(&()), C::one(&()));
        let d = 2;
        let one = Toeplitz::identity(&d);
        let k = Block2::diag(k0.forward.clone(), one.clone());
        assert_eq!(contract_step_c(&z, &o, &k0).forward, Toeplitz::corner(&k));
        assert!(contract_step_c(&o, &z, &k0).forward.is_one());
        let mid = contract_step_c(&C::t(), &C::s(), &k0);
        assert!(mid.verify());
    }
}
