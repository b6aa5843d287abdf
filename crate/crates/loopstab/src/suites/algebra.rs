use std::collections::BTreeMap;

use super::{per_instance, SuiteConfig};
use crate::homotopies::{
    bott, bott_invert, eval_v, k_end_display, k_start_display, key_lemma_suite, linearize_k, linearize_k_unit,
    linearize_u, multiplicativity, qhat_symmetry_check, recover_entry, rot_conjugate, stabilize, u_end_display,
    vsymbol, HomotopyPath, InvertMode, ShiftingRotation, Variant,
};
use crate::loops::{lift_loop, Generator, Loop, LoopUnit};
use crate::operators::{q_op, Idx, InvolutionOp, Toeplitz, ZOp};
use crate::random;
use crate::report::Check;
use crate::scalar::{CirclePoint, CircleScalar, Mat, Rational, Ring};

type R = Rational;
type C = CircleScalar;

pub(crate) fn rot(p: &CirclePoint, variant: Variant) -> crate::Result<ShiftingRotation<R>> {
    ShiftingRotation::<R>::at(p, variant)
}

fn symbolic() -> ShiftingRotation<C> {
    ShiftingRotation::<C>::at(&CirclePoint::Symbolic, Variant::Unitary)
}

pub(crate) fn is_start(p: &CirclePoint) -> bool {
    p.ts().is_some_and(|(t, _)| t.is_zero())
}

pub(crate) fn is_end(p: &CirclePoint) -> bool {
    p.delta_plus() || p.delta_minus()
}

/// Rotation lemma parts a–d: symbolically and at every rational point.
pub fn artkey(cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = key_lemma_suite(&symbolic(), cfg.window.min(5), "unitary symbolic");
    for p in cfg.rational_points() {
        let label = format!("unitary {}", p.label());
        match rot(&p, Variant::Unitary) {
            Ok(r) => out.extend(key_lemma_suite(&r, cfg.window, &label)),
            Err(e) => out.push(Check::error("rotation", label, e)),
        }
    }
    out
}

/// T_K endpoints, the endomorphism property, recovery through the rotation,
/// and the relabeling at the end of the stabilized family.
pub fn stabilize_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let pts = cfg.rational_points();
    let d = cfg.d;
    let mut out = per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("stabilize", i);
        let a = random::toeplitz_unit(&mut r, d, cfg.support).forward;
        let b = random::toeplitz_unit(&mut r, d, cfg.support).forward;
        let inst = format!("pair #{i}");
        let mut rows = Vec::new();
        let (mut endo, mut start, mut end) = (true, true, true);
        for p in &pts {
            let Ok(rt) = rot(p, Variant::Unitary) else { continue };
            let ta = rot_conjugate(&rt, &a);
            endo &= rot_conjugate(&rt, &a.mul(&b)) == ta.mul(&rot_conjugate(&rt, &b));
            if is_start(p) {
                start &= ta == a;
            }
            if is_end(p) {
                let w = |k| Toeplitz::w(Loop::z(&d, k));
                end &= ta == w(1).mul(&a).mul(&w(-1));
            }
        }
        rows.push(Check::new("stabilize.endomorphism", &inst, endo));
        rows.push(Check::new("stabilize.start", &inst, start));
        rows.push(Check::new("stabilize.end", &inst, end));
        if i < 3 {
            let sym = symbolic();
            let ac = a.map(&d, |m| m.lift::<C>());
            let x = rot_conjugate(&sym, &ac);
            let w = cfg.window.min(5);
            let ok = (0..w).all(|k| (0..w).all(|l| recover_entry(&sym, &x, k, l) == ac.entry(k, l)));
            rows.push(Check::new("stabilize.recovery", format!("{inst} symbolic"), ok));
        }
        rows
    });
    let one = Mat::scalar(d, R::one());
    let fin: BTreeMap<(Idx, Idx), Mat<R>> = BTreeMap::from([
        ((Idx::NN(0, 1), Idx::NN(2, 0)), one.clone()),
        ((Idx::NN(1, 0), Idx::NN(0, 3)), one.scale(&R::from_int(2))),
    ]);
    let relabel: BTreeMap<(Idx, Idx), Mat<R>> = fin
        .iter()
        .map(|(&(p, q), x)| {
            let sh = |i: Idx| match i {
                Idx::NN(n, m) => Idx::NN(n + 1, m),
                other => other,
            };
            ((sh(p), sh(q)), x.clone())
        })
        .collect();
    let res = (|| -> crate::Result<bool> {
        let at_start = stabilize(&rot(&CirclePoint::start(), Variant::Unitary)?, &fin)?;
        let at_end = stabilize(&rot(&CirclePoint::end(), Variant::Unitary)?, &fin)?;
        Ok(at_start == fin && at_end == relabel)
    })();
    out.push(Check::from_result("stabilize.relabeled", "two entries", res));
    out
}

/// Involution, right-constant immunity, inversion and the linear-loop value.
pub fn bott_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let d = cfg.d;
    per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("bott", i);
        let a = random::loop_unit(&mut r, d, cfg.support);
        let (c, c_inv) = random::invertible(&mut r, d);
        let cu = LoopUnit::build(d, &[Generator::Constant { c, c_inv }]).expect("checked inverse");
        let inst = format!("unit #{i}");
        let b = bott(&a);
        let q = random::involution(&mut r, d);
        let mixer = LoopUnit::build(d, &[Generator::Mixer { power: 1, q: q.clone() }]).expect("involution");
        let display = q_op(&d).add(&ZOp::unit(0, 0, q.sub(&Mat::scalar(d, R::one()))));
        vec![
            Check::new("bott.involution", &inst, InvolutionOp::new(b.op().clone()).is_ok() && b.op().pow(2).is_one()),
            Check::new("bott.right-constant", &inst, bott(&a.mul(&cu)) == b),
            Check::from_result(
                "bott.inversion",
                &inst,
                bott_invert(b.op(), InvertMode::Z1).map(|l| l == a.pointed().forward),
            ),
            Check::new("bott.linear-loop", &inst, *bott(&mixer).op() == display),
        ]
    })
}

/// U(a,θ,v) and K(a,θ,v): multiplicativity, endpoint displays, the constant
/// mixer family, Q̂-symmetry and concatenation of families.
pub fn linearize_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let pts = cfg.rational_points();
    let d = cfg.d;
    per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("linearize", i);
        let a = random::loop_unit(&mut r, d, cfg.support);
        let b = random::loop_unit(&mut r, d, cfg.support);
        let q = random::involution(&mut r, d);
        let mixer = LoopUnit::build(d, &[Generator::Mixer { power: 1, q }]).expect("involution");
        let fa = lift_loop::<R>(&a.forward);
        let inst = format!("unit #{i}");
        let mut rows = Vec::new();
        let (mut mult, mut mix, mut pointed) = (true, true, true);
        for p in &pts {
            let Ok(rt) = rot(p, Variant::Unitary) else { continue };
            mult &= multiplicativity(&rt, &a, &b).unwrap_or(false);
            mix &= linearize_k(&rt, &mixer) == k_end_display::<R>(&mixer);
            let k = linearize_k_unit(&rt, &a);
            pointed &= k.verify() && eval_v(&k.forward, &R::one()).is_one();
            if is_start(p) {
                rows.push(Check::new("linearize.u.start", &inst, linearize_u(&rt, &fa) == ZOp::laurent_op(vsymbol(&fa))));
                rows.push(Check::new("linearize.k.start", &inst, k.forward == k_start_display::<R>(&a)));
            }
            if is_end(p) {
                rows.push(Check::new("linearize.u.end", &inst, linearize_u(&rt, &fa) == u_end_display(&fa)));
                rows.push(Check::new("linearize.k.end", &inst, k.forward == k_end_display::<R>(&a)));
            }
            rows.extend(qhat_symmetry_check(&rt, &fa, &format!("{inst} {}", p.label())));
        }
        if i < 2 {
            let sym = symbolic();
            mult &= multiplicativity(&sym, &a, &b).unwrap_or(false);
            mix &= linearize_k(&sym, &mixer) == k_end_display::<C>(&mixer);
        }
        rows.push(Check::new("linearize.multiplicative", &inst, mult));
        rows.push(Check::new("linearize.k.mixer-constant", &inst, mix));
        rows.push(Check::new("linearize.k.pointed-unit", &inst, pointed));
        let a2 = a.clone();
        let f = HomotopyPath::new(move |p| Ok(linearize_k_unit(&rot(p, Variant::Unitary)?, &a2)));
        let res = (|| -> crate::Result<bool> {
            let g = HomotopyPath::constant(f.at_end()?);
            let h = f.concat(&g)?;
            let mut ok = h.at_start()? == f.at_start()? && h.at_end()? == g.at_end()?;
            for p in &pts {
                ok &= h.at(p)?.verify();
            }
            Ok(ok)
        })();
        rows.push(Check::from_result("homotopy.concat", &inst, res));
        rows
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pythagorean_grid;

    fn small() -> SuiteConfig {
        SuiteConfig { instances: 3, window: 4, points: pythagorean_grid(2), ..Default::default() }
    }

    fn assert_all(rows: Vec<Check>) {
        assert!(!rows.is_empty());
        for c in rows {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn suites_pass_small() {
        let cfg = small();
        assert_all(artkey(&cfg));
        assert_all(stabilize_suite(&cfg));
        assert_all(bott_suite(&cfg));
        assert_all(linearize_suite(&cfg));
    }
}
