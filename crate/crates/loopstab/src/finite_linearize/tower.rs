use super::stripe::{fits, lambda_base, reduce_op, Kind, StripePerturbation};
use crate::error::{Error, Result};
use crate::homotopies::{
    eval_v, lambda_vq, linearize_k, linearize_u, linearize_u_unit, vconst_op, vscalar, ShiftingRotation, Unit,
};
use crate::loops::{lift_loop, LoopDecomposition, Tag};
use crate::operators::{InvolutionOp, ZOp};
use crate::scalar::{Mat, Rational, Ring, Scalar, VMat};

type VOp<S> = ZOp<VMat<S>>;
type Op<S> = ZOp<Mat<S>>;

fn kind_of(tag: Tag) -> Kind {
    match tag {
        Tag::L => Kind::L,
        Tag::R => Kind::R,
    }
}

/// Reduce the inverse of Ĥ and confirm it inverts H.
fn reduce_pair<E: Ring>(
    hat: &Unit<ZOp<E>>,
    base: &E,
    base_inv: &E,
    kind: Kind,
    (m, n): (i64, i64),
) -> Result<(StripePerturbation<E>, Unit<ZOp<E>>)> {
    let sp = StripePerturbation::from_op(&hat.forward, base, kind, m, n)?;
    let sp_inv = StripePerturbation::from_op(&hat.inverse, base_inv, kind, m, n)?;
    let red = Unit { forward: sp.reduce().op(), inverse: sp_inv.reduce().op() };
    if !red.verify() {
        return Err(Error::StripeClassViolation("reduced inverse does not invert the reduction".into()));
    }
    Ok((sp, red))
}

/// Ĥ_k, H_k over the v-ring at one point, with inverses.
#[derive(Clone, Debug)]
pub struct TowerState<S: Scalar> {
    /// Ĥ_1, …, Ĥ_s.
    pub h_hat: Vec<Unit<VOp<S>>>,
    /// H_0, …, H_s.
    pub h: Vec<Unit<VOp<S>>>,
    /// Classes of Ĥ_1, …, Ĥ_s as read off their supports.
    pub h_hat_stripes: Vec<StripePerturbation<VMat<S>>>,
    /// (M_k, N_k) for k = 0, …, s.
    pub sums: Vec<(i64, i64)>,
}

pub fn tower<S: Scalar>(dec: &LoopDecomposition, rot: &ShiftingRotation<S>) -> Result<TowerState<S>> {
    dec.validate()?;
    let d = dec.dim();
    let (v, vi) = (vscalar::<S>(d, 1), vscalar::<S>(d, -1));
    let mut h = vec![Unit { forward: lambda_vq::<S>(d, 1), inverse: lambda_vq::<S>(d, -1) }];
    let mut h_hat = Vec::new();
    let mut stripes = Vec::new();
    let mut sums = vec![(0, 0)];
    for (k, (a, w)) in dec.factors.iter().zip(&dec.class.windows).enumerate() {
        let mn = dec.class.partial(k + 1);
        let uv = linearize_u(rot, &lift_loop(&a.forward));
        let uv_inv = linearize_u(rot, &lift_loop(&a.inverse));
        let u1 = linearize_u_unit(rot, a).map(vconst_op);
        let prev = &h[k];
        let hat = Unit {
            forward: uv.mul(&prev.forward).mul(&u1.inverse),
            inverse: u1.forward.mul(&prev.inverse).mul(&uv_inv),
        };
        let (sp, red) = reduce_pair(&hat, &v, &vi, kind_of(w.tag), mn)?;
        stripes.push(sp);
        h_hat.push(hat);
        h.push(red);
        sums.push(mn);
    }
    Ok(TowerState { h_hat, h, h_hat_stripes: stripes, sums })
}

/// Q̂_k, Q_k and Q̃_k.
#[derive(Clone, Debug)]
pub struct QTower<S: Scalar> {
    /// Q̂_1, …, Q̂_s.
    pub q_hat: Vec<Op<S>>,
    /// Q_0, …, Q_s.
    pub q: Vec<Op<S>>,
    /// Q̃_0, …, Q̃_s.
    pub q_tilde: Vec<Op<S>>,
}

pub fn q_tower<S: Scalar>(dec: &LoopDecomposition) -> Result<QTower<S>> {
    dec.validate()?;
    let d = dec.dim();
    let minus = Mat::scalar(d, S::scalar_one().neg());
    let u = |x| ZOp::laurent_op(lift_loop::<S>(x));
    let mut q = vec![lambda_base(&minus)];
    let mut q_hat = Vec::new();
    for (k, a) in dec.factors.iter().enumerate() {
        let hat = u(&a.forward).mul(&q[k]).mul(&u(&a.inverse));
        let red = reduce_op(&hat, &minus, dec.class.partial(k + 1).0, dec.class.partial(k + 1).1)?;
        q.push(red.op());
        q_hat.push(hat);
    }
    let s = dec.len();
    let mut q_tilde = Vec::with_capacity(s + 1);
    for k in 0..=s {
        let (mut f, mut b) = (ZOp::identity(&d), ZOp::identity(&d));
        for a in &dec.factors[k..] {
            f = u(&a.forward).mul(&f);
            b = b.mul(&u(&a.inverse));
        }
        q_tilde.push(f.mul(&q[k]).mul(&b));
    }
    Ok(QTower { q_hat, q, q_tilde })
}

/// B_F(ã) = Q_s(ã).
pub fn b_f<S: Scalar>(dec: &LoopDecomposition) -> Result<InvolutionOp<Mat<S>>> {
    let qt = q_tower::<S>(dec)?;
    InvolutionOp::new(qt.q[dec.len()].clone())
}

fn at<S: Scalar>(x: &Unit<VOp<S>>, w: i64) -> Unit<VOp<S>> {
    let w = S::from_int(w);
    x.map(|o| vconst_op(&eval_v(o, &w)))
}

/// C_{A,Ã}(t) with its inverse A⁻¹C(−t)A⁻¹, for A = Ĥ and Ã = H.
fn interp<E: Ring>(hat: &Unit<ZOp<E>>, red: &ZOp<E>, t: &Rational) -> Unit<ZOp<E>> {
    let c = |t: &Rational| hat.forward.add(&red.sub(&hat.forward).scale_q(t));
    Unit { forward: c(t), inverse: hat.inverse.mul(&c(&t.neg())).mul(&hat.inverse) }
}

/// U_F(ã, θ, h, v) with its inverse.
pub fn u_f<S: Scalar>(
    dec: &LoopDecomposition,
    rot: &ShiftingRotation<S>,
    tw: &TowerState<S>,
    h: &Rational,
) -> Unit<VOp<S>> {
    let d = dec.dim();
    let half = h.mul(&Rational::new(1, 2));
    let mut acc = Unit::identity(&d);
    for (k, a) in dec.factors.iter().enumerate() {
        let hat = &tw.h_hat[k];
        let red = &tw.h[k + 1];
        let (hat_m, red_m) = (at(hat, -1), at(red, -1));
        let cv = interp(hat, &red.forward, h);
        let cm = interp(&hat_m, &red_m.forward, &half);
        let u = Unit {
            forward: linearize_u(rot, &lift_loop(&a.forward)),
            inverse: linearize_u(rot, &lift_loop(&a.inverse)),
        };
        let factor = cv.mul(&cm.inv()).mul(&hat_m).mul(&hat.inv()).mul(&u);
        acc = factor.mul(&acc);
    }
    acc
}

/// 𝖴_F(ã, h) = Π C_{Q̂_k,Q_k}(h/2)·Q̂_k·𝖴(a_k), with its inverse.
pub fn u_f_plain<S: Scalar>(dec: &LoopDecomposition, qt: &QTower<S>, h: &Rational) -> Unit<Op<S>> {
    let d = dec.dim();
    let half = h.mul(&Rational::new(1, 2));
    let mut acc = Unit::identity(&d);
    for (k, a) in dec.factors.iter().enumerate() {
        let qh = Unit { forward: qt.q_hat[k].clone(), inverse: qt.q_hat[k].clone() };
        let c = interp(&qh, &qt.q[k + 1], &half);
        let u = Unit {
            forward: ZOp::laurent_op(lift_loop::<S>(&a.forward)),
            inverse: ZOp::laurent_op(lift_loop::<S>(&a.inverse)),
        };
        acc = c.mul(&qh).mul(&u).mul(&acc);
    }
    acc
}

/// K_F = Λ(v,Q)⁻¹·U_F(v)·Λ(v,Q)·U_F(1)⁻¹.
pub fn k_f<S: Scalar>(
    dec: &LoopDecomposition,
    rot: &ShiftingRotation<S>,
    tw: &TowerState<S>,
    h: &Rational,
) -> VOp<S> {
    let d = dec.dim();
    let uf = u_f(dec, rot, tw, h);
    let uf1_inv = at(&uf, 1).inverse;
    lambda_vq::<S>(d, -1).mul(&uf.forward).mul(&lambda_vq(d, 1)).mul(&uf1_inv)
}

/// Lemma on conjugation by U(a,θ,v)·U(a,θ,1)⁻¹: the stripe class of the
/// result, read off its support, is L(m+m′,n+n′) (or R for R-tagged factors).
pub fn band_growth<S: Scalar>(
    dec: &LoopDecomposition,
    rot: &ShiftingRotation<S>,
    a_pert: &StripePerturbation<VMat<S>>,
) -> Result<bool> {
    let (a, w) = (&dec.factors[0], dec.class.windows[0]);
    let uv = linearize_u(rot, &lift_loop(&a.forward));
    let u1_inv = vconst_op(&linearize_u_unit(rot, a).inverse);
    let out = uv.mul(&a_pert.op()).mul(&u1_inv);
    let diff = out.sub(&lambda_base(&a_pert.base));
    Ok(diff.is_finite() && fits(diff.finite(), kind_of(w.tag), w.m + a_pert.m, w.n + a_pert.n))
}

/// U(a,θ,v) − U(a) sits in rows m..n and in columns −n..−m.
pub fn linearized_stripes<S: Scalar>(rot: &ShiftingRotation<S>, dec: &LoopDecomposition) -> bool {
    dec.factors.iter().zip(&dec.class.windows).all(|(a, w)| {
        let (f, lo, hi) = match w.tag {
            Tag::L => (&a.forward, w.m, w.n),
            Tag::R => (&a.inverse, -w.n, -w.m),
        };
        let lf = lift_loop::<S>(f);
        let diff = linearize_u(rot, &lf).sub(&vconst_op(&ZOp::laurent_op(lf)));
        diff.is_finite() && fits(diff.finite(), Kind::L, lo, hi) && fits(diff.finite(), Kind::R, -hi, -lo)
    })
}

/// K(a, θ) for the product loop, the h = 0 value of K_F.
pub fn k_of_product<S: Scalar>(dec: &LoopDecomposition, rot: &ShiftingRotation<S>) -> VOp<S> {
    linearize_k(rot, &dec.product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::{bott, k_end_display};
    use crate::loops::{Generator, LoopUnit};
    use crate::scalar::CirclePoint;

    fn rm(r: &[&[i64]]) -> Mat<Rational> {
        Mat::from_ints(r)
    }

    fn mixer_unit(q: Mat<Rational>, power: i64) -> LoopUnit {
        LoopUnit::build(q.dim(), &[Generator::Mixer { power, q }]).unwrap()
    }

    fn two_factor() -> LoopDecomposition {
        let a1 = mixer_unit(rm(&[&[1, 2], &[0, -1]]), 1);
        let n = crate::loops::Loop::monomial(-1, rm(&[&[0, 1], &[0, 0]]));
        let a2 = LoopUnit::build(2, &[Generator::Unipotent { n, index: 2 }]).unwrap();
        LoopDecomposition::with_default_class(vec![a1, a2]).unwrap()
    }

    fn rot(p: &CirclePoint) -> ShiftingRotation<Rational> {
        ShiftingRotation::<Rational>::at(p, crate::homotopies::Variant::Unitary).unwrap()
    }

    #[test]
    fn single_mixer_b_f_is_bott() {
        let a = mixer_unit(rm(&[&[0, 1], &[1, 0]]), 1);
        let dec = LoopDecomposition::with_default_class(vec![a.clone()]).unwrap();
        assert_eq!(b_f::<Rational>(&dec).unwrap(), bott(&a));
        let trivial = LoopDecomposition::with_default_class(vec![LoopUnit::identity(2)]).unwrap();
        assert!(b_f::<Rational>(&trivial).unwrap().op().add(&ZOp::identity(&2)).scale_q(&Rational::new(1, 2))
            == ZOp::split_diag(Mat::scalar(2, Rational::zero()), Mat::scalar(2, Rational::one())));
    }

    #[test]
    fn caplemma_at_a_point() {
        let dec = two_factor();
        let p = CirclePoint::rational(Rational::new(3, 5), Rational::new(4, 5)).unwrap();
        let r = rot(&p);
        let tw = tower(&dec, &r).unwrap();
        for x in tw.h.iter().chain(&tw.h_hat) {
            assert!(at(x, 1).forward.is_one());
        }
        let a = dec.product();
        let u0 = u_f(&dec, &r, &tw, &Rational::zero());
        assert_eq!(u0.forward, linearize_u(&r, &lift_loop(&a.forward)));
        let u1 = u_f(&dec, &r, &tw, &Rational::one());
        let s = dec.len();
        let rhs = tw.h[s].forward.mul(&at(&u1, 1).forward).mul(&lambda_vq(2, -1));
        assert_eq!(u1.forward, rhs);
        assert!(u1.verify());
        assert_eq!(k_f(&dec, &r, &tw, &Rational::zero()), k_of_product(&dec, &r));
        let k1 = k_f(&dec, &r, &tw, &Rational::one());
        assert_eq!(k1, lambda_vq(2, -1).mul(&tw.h[s].forward));
    }

    #[test]
    fn caplemma_endpoints() {
        let dec = two_factor();
        let a = dec.product();
        let r = rot(&CirclePoint::end());
        let tw = tower(&dec, &r).unwrap();
        for h in [Rational::zero(), Rational::new(1, 2), Rational::one()] {
            assert_eq!(u_f(&dec, &r, &tw, &h).forward, linearize_u(&r, &lift_loop(&a.forward)));
            assert_eq!(k_f(&dec, &r, &tw, &h), k_end_display::<Rational>(&a));
        }
        let r = rot(&CirclePoint::start());
        let tw = tower(&dec, &r).unwrap();
        let qt = q_tower::<Rational>(&dec).unwrap();
        for (k, hk) in tw.h.iter().enumerate() {
            assert_eq!(eval_v(&hk.forward, &Rational::from_int(-1)), qt.q[k]);
        }
        for h in [Rational::zero(), Rational::new(1, 2), Rational::one()] {
            let plain = u_f_plain(&dec, &qt, &h);
            assert_eq!(u_f(&dec, &r, &tw, &h).forward, vconst_op(&plain.forward));
        }
    }

    #[test]
    fn stripes_of_linearized_factors() {
        let dec = two_factor();
        let r = rot(&CirclePoint::rational(Rational::new(5, 13), Rational::new(12, 13)).unwrap());
        assert!(linearized_stripes(&r, &dec));
        let tw = tower(&dec, &r).unwrap();
        assert!(band_growth(&dec, &r, &tw.h_hat_stripes[0].reduce()).unwrap());
    }
}
