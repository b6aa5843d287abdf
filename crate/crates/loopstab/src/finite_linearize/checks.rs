use super::stripe::{fits, lambda_base, stripe_inverse, Kind, StripePerturbation};
use super::tower::{
    b_f, band_growth, k_f, k_of_product, linearized_stripes, q_tower, tower, u_f, u_f_plain, QTower, TowerState,
};
use crate::error::Result;
use crate::homotopies::{
    bott, eval_v, k_end_display, lambda_vq, linearize_u, vconst_op, ShiftingRotation, Unit, Variant,
};
use crate::loops::{lift_loop, LoopDecomposition};
use crate::operators::ZOp;
use crate::report::Check;
use crate::scalar::{CirclePoint, Mat, Rational, Ring};

type R = Rational;

fn hs() -> [R; 3] {
    [R::zero(), R::new(1, 2), R::one()]
}

fn u_plain(dec: &LoopDecomposition) -> Unit<ZOp<Mat<R>>> {
    let a = dec.product();
    Unit { forward: ZOp::laurent_op(a.forward), inverse: ZOp::laurent_op(a.inverse) }
}

/// Π_k ½(1 + Q̃_k Q̃_{k−1}), k = s first.
fn q_tilde_product(qt: &QTower<R>, d: usize) -> ZOp<Mat<R>> {
    let one = ZOp::identity(&d);
    let mut acc = one.clone();
    for k in 1..qt.q_tilde.len() {
        let f = one.add(&qt.q_tilde[k].mul(&qt.q_tilde[k - 1])).scale_q(&R::new(1, 2));
        acc = f.mul(&acc);
    }
    acc
}

/// The stripe lemma on Ĥ₁ and Q̂₁: inverse law, involution preservation and
/// the closed-form middle-block inverse after v ↦ 2.
fn stripe_lemma(tw: &TowerState<R>, qt: &QTower<R>, dec: &LoopDecomposition) -> Result<bool> {
    let mut ok = true;
    let Some(sp) = tw.h_hat_stripes.first() else { return Ok(true) };
    let hat = &tw.h_hat[0];
    for t in [R::new(1, 3), R::new(1, 2), R::from_int(2)] {
        let c = sp.path(&t);
        ok &= c.mul(&hat.inverse.mul(&sp.path(&t.neg())).mul(&hat.inverse)).is_one();
    }
    ok &= sp.path(&R::zero()) == hat.forward && sp.path(&R::one()) == sp.reduce().op();
    let two = R::from_int(2);
    let at2 = StripePerturbation::from_op(&eval_v(&hat.forward, &two), &Mat::scalar(dec.dim(), two), sp.kind, sp.m, sp.n)?;
    ok &= stripe_inverse(&at2)? == eval_v(&hat.inverse, &R::from_int(2));
    let minus = Mat::scalar(dec.dim(), R::from_int(-1));
    let (m, n) = dec.class.partial(1);
    let q1 = StripePerturbation::from_op(&qt.q_hat[0], &minus, sp.kind, m, n)?;
    ok &= q1.path(&R::new(1, 2)).pow(2).is_one();
    Ok(ok)
}

/// Every finite-linearization statement for one decomposition at each point.
pub fn finite_suite(dec: &LoopDecomposition, points: &[CirclePoint], label: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let d = dec.dim();
    let s = dec.len();
    let (m_s, n_s) = dec.class.partial(s);
    let a = dec.product();
    let ua = u_plain(dec);

    let qt = match q_tower::<R>(dec) {
        Ok(q) => q,
        Err(e) => {
            out.push(Check::error("finite.q-tower", label, e));
            return out;
        }
    };
    let mut ok = qt.q.iter().chain(&qt.q_hat).all(|q| q.pow(2).is_one());
    ok &= qt.q_tilde[s] == qt.q[s] && qt.q_tilde[0] == ua.forward.mul(&lambda_base(&Mat::scalar(d, R::from_int(-1)))).mul(&ua.inverse);
    out.push(Check::new("finite.q-tower.involutions", label, ok));

    let bf = b_f::<R>(dec);
    out.push(Check::from_result(
        "finite.b_f.box",
        label,
        bf.as_ref().map_err(Clone::clone).map(|b| {
            let diff = b.op().sub(&lambda_base(&Mat::scalar(d, R::from_int(-1))));
            diff.is_finite() && fits(diff.finite(), Kind::Both, m_s, n_s)
        }),
    ));
    let uu1 = u_f_plain(dec, &qt, &R::one());
    let m = uu1.mul(&ua.inv());
    let transported = m.forward.mul(bott(&a).op()).mul(&m.inverse);
    out.push(Check::new("finite.b_f.transport", label, bf.as_ref().is_ok_and(|b| *b.op() == transported)));
    let mut ok = true;
    for h in hs() {
        let uu = u_f_plain(dec, &qt, &h);
        ok &= uu.verify() && uu.forward.sub(&ua.forward).is_finite();
    }
    out.push(Check::new("finite.u_f_plain.finite-difference", label, ok));
    out.push(Check::new("finite.u_f_plain.h0", label, u_f_plain(dec, &qt, &R::zero()).forward == ua.forward));
    let want = q_tilde_product(&qt, d).mul(&ua.forward);
    out.push(Check::new("finite.u_f_plain.h1", label, uu1.forward == want));

    for p in points {
        let inst = format!("{label} @ {}", p.label());
        let rot = match ShiftingRotation::<R>::at(p, Variant::Unitary) {
            Ok(r) => r,
            Err(e) => {
                out.push(Check::error("finite.tower", inst, e));
                continue;
            }
        };
        let tw = match tower(dec, &rot) {
            Ok(t) => t,
            Err(e) => {
                out.push(Check::error("finite.tower", inst, e));
                continue;
            }
        };
        out.extend(point_checks(dec, &rot, &tw, &qt, p, &inst));
    }
    out
}

fn point_checks(
    dec: &LoopDecomposition,
    rot: &ShiftingRotation<R>,
    tw: &TowerState<R>,
    qt: &QTower<R>,
    p: &CirclePoint,
    inst: &str,
) -> Vec<Check> {
    let mut out = Vec::new();
    let d = dec.dim();
    let s = dec.len();
    let (m_s, n_s) = dec.class.partial(s);
    let a = dec.product();
    let ua_v = linearize_u(rot, &lift_loop(&a.forward));
    let one = R::one();
    let minus = R::from_int(-1);

    let boxes = tw.h.iter().zip(&tw.sums).all(|(h, &(m, n))| {
        let diff = h.forward.sub(&lambda_vq::<R>(d, 1));
        diff.is_finite() && fits(diff.finite(), Kind::Both, m, n)
    });
    out.push(Check::new("finite.tower.boxes", inst, boxes));
    out.push(Check::new(
        "finite.caplemma.o",
        inst,
        tw.h.iter().chain(&tw.h_hat).all(|h| eval_v(&h.forward, &one).is_one()),
    ));
    out.push(Check::new("finite.lemma.stripes", inst, linearized_stripes(rot, dec)));
    let bg = tw.h_hat_stripes.first().map_or(Ok(true), |sp| band_growth(dec, rot, &sp.reduce()));
    out.push(Check::from_result("finite.lemma.band-growth", inst, bg));
    out.push(Check::from_result("finite.lemma.red-path", inst, stripe_lemma(tw, qt, dec)));

    let mut ok_i = true;
    let mut ok_ii = true;
    let mut ok_inv = true;
    let mut k_ok_i = true;
    let mut k_ok_ii = true;
    let mut pointed = true;
    let end = p.delta_plus() || p.delta_minus();
    let start = p.ts().is_some_and(|(t, _)| t.is_zero());
    let mut ok_iii = true;
    let mut ok_iv = true;
    let mut k_ok_iii = true;
    let mut k_ok_iv = true;
    for h in hs() {
        let uf = u_f(dec, rot, tw, &h);
        ok_inv &= uf.verify();
        let kf = k_f(dec, rot, tw, &h);
        pointed &= eval_v(&kf, &one).is_one();
        if h.is_zero() {
            ok_i &= uf.forward == ua_v;
            k_ok_i &= kf == k_of_product(dec, rot);
        }
        if h == one {
            let uf1 = eval_v(&uf.forward, &one);
            ok_ii &= uf.forward == tw.h[s].forward.mul(&vconst_op(&uf1)).mul(&lambda_vq(d, -1));
            let want = lambda_vq::<R>(d, -1).mul(&tw.h[s].forward);
            let diff = kf.sub(&ZOp::identity(&d));
            k_ok_ii &= kf == want && diff.is_finite() && fits(diff.finite(), Kind::Both, m_s, n_s);
        }
        if end {
            ok_iii &= uf.forward == ua_v;
            k_ok_iii &= kf == k_end_display::<R>(&a);
        }
        if start {
            let uu = u_f_plain(dec, qt, &h);
            ok_iv &= uf.forward == vconst_op(&uu.forward);
            let lv = lambda_vq::<R>(d, 1);
            let want = lambda_vq::<R>(d, -1).mul(&vconst_op(&uu.forward)).mul(&lv).mul(&vconst_op(&uu.inverse));
            k_ok_iv &= kf == want;
            ok_iv &= tw.h.iter().zip(&qt.q).all(|(h, q)| eval_v(&h.forward, &minus) == *q);
        }
    }
    out.push(Check::new("finite.caplemma.i", inst, ok_i));
    out.push(Check::new("finite.caplemma.ii", inst, ok_ii));
    out.push(Check::new("finite.u_f.inverse", inst, ok_inv));
    out.push(Check::new("finite.prop.i", inst, k_ok_i));
    out.push(Check::new("finite.prop.ii", inst, k_ok_ii));
    out.push(Check::new("finite.k_f.pointed", inst, pointed));
    if end {
        out.push(Check::new("finite.caplemma.iii", inst, ok_iii));
        out.push(Check::new("finite.prop.iii", inst, k_ok_iii));
    }
    if start {
        out.push(Check::new("finite.caplemma.iv", inst, ok_iv));
        out.push(Check::new("finite.prop.iv", inst, k_ok_iv));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{decomposition, rng};

    fn points() -> Vec<CirclePoint> {
        vec![
            CirclePoint::start(),
            CirclePoint::end(),
            CirclePoint::rational(R::new(3, 5), R::new(4, 5)).unwrap(),
        ]
    }

    #[test]
    fn random_decompositions_pass() {
        let mut r = rng(11);
        for i in 0..4 {
            let dec = decomposition(&mut r, 2, 1 + i % 3);
            for c in finite_suite(&dec, &points(), &format!("dec{i}")) {
                assert!(c.pass, "{c:?} {:?}", dec.factors.iter().map(|f| &f.forward).collect::<Vec<_>>());
            }
        }
    }
}
