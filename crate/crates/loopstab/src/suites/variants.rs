use super::algebra::{is_end, rot};
use super::{per_instance, SuiteConfig};
use crate::finite_linearize::{k_f, tower, u_f};
use crate::homotopies::{
    bott, bott_in, bott_invert, k_end_display, k_start_display, key_lemma_suite, linearize_k, linearize_k_unit,
    linearize_u, multiplicativity, recover_entry, rot_conjugate, vsymbol, InvertMode, ShiftingRotation, Variant,
};
use crate::loops::{lift_loop, Generator, LoopDecomposition, LoopUnit};
use crate::operators::{InvolutionOp, ZOp};
use crate::random;
use crate::report::Check;
use crate::scalar::{Adjoint, RatFunc, Rational, Ring};

type R = Rational;

/// X† = X⁻¹ for every unit built from unitary loops with the Unitary pair.
pub fn unitary_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let pts = cfg.rational_points();
    let d = cfg.d;
    let h = [R::zero(), R::new(1, 3), R::one()];
    per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("unitary", i);
        let a = random::unitary_unit(&mut r, d, cfg.support);
        let inst = format!("unit #{i}");
        let (fa, ia) = (lift_loop::<R>(&a.forward), lift_loop::<R>(&a.inverse));
        let b = bott(&a);
        let mut rows = vec![
            Check::new("unitary.loop", &inst, a.is_unitary()),
            Check::new("unitary.bott", &inst, b.op().adjoint() == *b.op()),
        ];
        let (mut u_ok, mut k_ok) = (true, true);
        for p in &pts {
            let Ok(rt) = rot(p, Variant::Unitary) else { continue };
            u_ok &= linearize_u(&rt, &fa).adjoint() == linearize_u(&rt, &ia);
            let k = linearize_k_unit(&rt, &a);
            k_ok &= k.forward.adjoint() == k.inverse;
        }
        rows.push(Check::new("unitary.u", &inst, u_ok));
        rows.push(Check::new("unitary.k", &inst, k_ok));

        if i < cfg.instances.min(10) {
            let s = 1 + i % cfg.s.max(1);
            let factors = (0..s).map(|_| random::unitary_unit(&mut r, d, 1)).collect();
            let res = LoopDecomposition::with_default_class(factors).and_then(|dec| {
                let (mut uf_ok, mut kf_ok) = (true, true);
                for p in &pts {
                    let rt = rot(p, Variant::Unitary)?;
                    let tw = tower::<R>(&dec, &rt)?;
                    for hh in &h {
                        let uf = u_f(&dec, &rt, &tw, hh);
                        uf_ok &= uf.forward.adjoint() == uf.inverse;
                        let kf = k_f(&dec, &rt, &tw, hh);
                        kf_ok &= kf.adjoint().mul(&kf).is_one();
                    }
                }
                Ok((uf_ok, kf_ok))
            });
            let label = format!("{inst} s={s}");
            match res {
                Ok((uf_ok, kf_ok)) => {
                    rows.push(Check::new("unitary.u_f", &label, uf_ok));
                    rows.push(Check::new("unitary.k_f", &label, kf_ok));
                }
                Err(e) => rows.push(Check::error("unitary.u_f", &label, e)),
            }
        }
        rows
    })
}

fn poly_points(cfg: &SuiteConfig) -> Vec<R> {
    let mut ts: Vec<R> = cfg
        .rational_points()
        .iter()
        .filter(|p| !is_end(p))
        .filter_map(|p| p.ts().map(|(t, _)| t.clone()))
        .collect();
    for t in [R::new(1, 2), R::new(-1, 3)] {
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts
}

/// Criteria of the rotation, stabilization, Bott and linearization suites
/// with the polynomial pair, over ℚ at rational t and over ℚ(t) formally.
pub fn poly_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let ts = poly_points(cfg);
    let d = cfg.d;
    let formal = ShiftingRotation::<RatFunc>::poly_formal();
    let mut out = key_lemma_suite(&formal, cfg.window.min(5), "poly formal");
    for t in &ts {
        out.extend(key_lemma_suite(&ShiftingRotation::poly(t.clone()), cfg.window, &format!("poly t={t}")));
    }
    out.extend(per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("poly", i);
        let ta = random::toeplitz_unit(&mut r, d, cfg.support).forward;
        let tb = random::toeplitz_unit(&mut r, d, cfg.support).forward;
        let a = random::loop_unit(&mut r, d, cfg.support);
        let b = random::loop_unit(&mut r, d, cfg.support);
        let (c, c_inv) = random::invertible(&mut r, d);
        let cu = LoopUnit::build(d, &[Generator::Constant { c, c_inv }]).expect("checked inverse");
        let q = random::involution(&mut r, d);
        let mixer = LoopUnit::build(d, &[Generator::Mixer { power: 1, q }]).expect("involution");
        let inst = format!("unit #{i}");
        let fa = lift_loop::<R>(&a.forward);

        let (mut endo, mut start, mut mult, mut mix, mut u0, mut k0, mut pointed) =
            (true, true, true, true, true, true, true);
        for t in &ts {
            let rt = ShiftingRotation::poly(t.clone());
            let x = rot_conjugate(&rt, &ta);
            endo &= rot_conjugate(&rt, &ta.mul(&tb)) == x.mul(&rot_conjugate(&rt, &tb));
            mult &= multiplicativity(&rt, &a, &b).unwrap_or(false);
            mix &= linearize_k(&rt, &mixer) == k_end_display::<R>(&mixer);
            let k = linearize_k_unit(&rt, &a);
            pointed &= k.verify();
            if t.is_zero() {
                start &= x == ta;
                u0 &= linearize_u(&rt, &fa) == ZOp::laurent_op(vsymbol(&fa));
                k0 &= k.forward == k_start_display::<R>(&a);
            }
        }
        let mut rows = vec![
            Check::new("poly.stabilize.endomorphism", &inst, endo),
            Check::new("poly.stabilize.start", &inst, start),
            Check::new("poly.linearize.multiplicative", &inst, mult),
            Check::new("poly.linearize.k.mixer-constant", &inst, mix),
            Check::new("poly.linearize.u.start", &inst, u0),
            Check::new("poly.linearize.k.start", &inst, k0),
            Check::new("poly.linearize.k.unit", &inst, pointed),
        ];

        let bq = bott_in::<RatFunc>(&a);
        let bc = bott_in::<RatFunc>(&a.mul(&cu));
        rows.push(Check::new(
            "poly.bott.involution",
            &inst,
            InvolutionOp::new(bq.op().clone()).is_ok() && bq.op().pow(2).is_one(),
        ));
        rows.push(Check::new("poly.bott.right-constant", &inst, bc == bq));
        rows.push(Check::from_result(
            "poly.bott.inversion",
            &inst,
            bott_invert(bq.op(), InvertMode::Z1).map(|l| l == lift_loop::<RatFunc>(&a.pointed().forward)),
        ));

        if i < 3 {
            let tc = ta.map(&d, |m| m.lift::<RatFunc>());
            let x = rot_conjugate(&formal, &tc);
            let w = cfg.window.min(5);
            let ok = (0..w).all(|k| (0..w).all(|l| recover_entry(&formal, &x, k, l) == tc.entry(k, l)));
            rows.push(Check::new("poly.stabilize.recovery", format!("{inst} formal"), ok));
            let tb2 = tb.map(&d, |m| m.lift::<RatFunc>());
            let endo = rot_conjugate(&formal, &tc.mul(&tb2)) == x.mul(&rot_conjugate(&formal, &tb2));
            rows.push(Check::new("poly.stabilize.endomorphism", format!("{inst} formal"), endo));
            let fm = multiplicativity(&formal, &a, &b).unwrap_or(false);
            rows.push(Check::new("poly.linearize.multiplicative", format!("{inst} formal"), fm));
            let fk = linearize_k(&formal, &mixer) == k_end_display::<RatFunc>(&mixer);
            rows.push(Check::new("poly.linearize.k.mixer-constant", format!("{inst} formal"), fk));
        }
        rows
    }));
    out
}
