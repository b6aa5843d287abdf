use super::algebra::{is_end, is_start, rot};
use super::{on_safe_window, per_instance, SuiteConfig};
use crate::homotopies::{graded_conjugate, Unit, Variant};
use crate::loops::{at_v, lift_loop, Loop};
use crate::operators::{Toeplitz, ZOp};
use crate::oracle::{dense_chain, dense_mul, truncate, Bindings};
use crate::random;
use crate::report::Check;
use crate::scalar::{vlift, CirclePoint, Mat, Rational, Ring, VMat};
use crate::toeplitz_contract::{
    contract_step_b, contract_step_c, killer_end_display, l_inflate_unit, step_b_s, step_b_start_symbol,
    symbol_invariant, symbol_killer, symbol_section, twisted_loop, Block2,
};

type R = Rational;

fn vconst_t(a: &Toeplitz<Mat<R>>) -> Toeplitz<VMat<R>> {
    a.map(&a.entry_ctx(), vlift)
}

/// σ(±v)e₀₀ + W(z)AW(z⁻¹) at θ = π/2 (+) and ±W(−z)-conjugation at −π/2.
fn t_end_display(a: &Toeplitz<Mat<R>>, sign: i64) -> Toeplitz<VMat<R>> {
    let d = a.entry_ctx();
    let w = |k: i64| {
        let c = if sign < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        Toeplitz::w(Loop::monomial(k, Mat::scalar(d, R::from_int(c))))
    };
    let core = w(1).mul(a).mul(&w(-1));
    Toeplitz::unit(0, 0, at_v(a.symbol(), sign)).add(&vconst_t(&core))
}

/// E(σ(±v)σ(±1)⁻¹); Z is 1 at v = 1 on both ends.
fn z_end_display(a: &Unit<Toeplitz<Mat<R>>>, sign: i64) -> Toeplitz<VMat<R>> {
    if sign > 0 {
        return killer_end_display(a);
    }
    let c = vlift(&a.inverse.symbol().eval_sign(-1));
    Toeplitz::corner(&at_v(a.forward.symbol(), -1).mul(&c))
}

/// Product rule against the dense oracle, σ multiplicative, T and Z endpoints.
pub fn toeplitz_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let mut pts = cfg.rational_points();
    pts.push(CirclePoint::neg_end());
    let d = cfg.d;
    let w = (2 * cfg.window).max(16);
    per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("toeplitz", i);
        let a = random::toeplitz_unit(&mut r, d, cfg.support);
        let b = random::toeplitz_unit(&mut r, d, cfg.support);
        let inst = format!("pair #{i}");
        let ab = a.forward.mul(&b.forward);
        let none = Bindings::none();
        let dense = on_safe_window(w, |w| {
            let win = [(0, w)];
            let prod = dense_mul(&truncate(&a.forward, &win, &none)?, &truncate(&b.forward, &win, &none)?)?;
            Ok((prod, truncate(&ab, &win, &none)?))
        });
        let mut rows = vec![
            Check::from_result("toeplitz.product-rule", &inst, dense),
            Check::new("toeplitz.symbol-multiplicative", &inst, *ab.symbol() == a.forward.symbol().mul(b.forward.symbol())),
        ];
        let au = a.unit();
        let (mut inv, mut t_start, mut t_end, mut z_start, mut z_end) = (true, true, true, true, true);
        for p in &pts {
            let Ok(rt) = rot(p, Variant::Unitary) else { continue };
            inv &= symbol_invariant(&rt, &a.forward);
            let t = graded_conjugate(&rt, &a.forward);
            let z = symbol_killer(&rt, &au);
            if is_start(p) {
                t_start &= t == vconst_t(&a.forward);
                z_start &= z.is_one();
            }
            if is_end(p) {
                let sign = if p.delta_plus() { 1 } else { -1 };
                if sign > 0 {
                    t_end &= t == t_end_display(&a.forward, 1);
                }
                z_end &= z == z_end_display(&au, sign);
            }
        }
        rows.push(Check::new("toeplitz.t.symbol-invariant", &inst, inv));
        rows.push(Check::new("toeplitz.t.start", &inst, t_start));
        rows.push(Check::new("toeplitz.t.end", &inst, t_end));
        rows.push(Check::new("toeplitz.z.start", &inst, z_start));
        rows.push(Check::new("toeplitz.z.end", &inst, z_end));
        rows
    })
}

/// Steps b and c at their endpoints and one interior point, and the symbol of
/// G(a) both structurally and against nested dense windows.
pub fn contract_suite(cfg: &SuiteConfig) -> Vec<Check> {
    let d = cfg.d;
    let (t, s) = (R::new(3, 5), R::new(4, 5));
    let (z, o) = (R::zero(), R::one());
    let w = cfg.window.max(10);
    per_instance(cfg.instances.max(10), |i| {
        let mut r = cfg.rng("contract", i);
        let a = random::loop_unit(&mut r, d, cfg.support);
        let inner = random::toeplitz_unit(&mut r, d, cfg.support).lift::<R>();
        let inst = format!("unit #{i}");
        let mut rows = Vec::new();

        let st = contract_step_b(&z, &o, &a, &inner);
        let en = contract_step_b(&o, &z, &a, &inner);
        rows.push(Check::new("contract.step-b.start", &inst, *st.forward.symbol() == step_b_start_symbol::<R>(&a)));
        rows.push(Check::new("contract.step-b.end", &inst, en.forward.symbol().is_one()));
        rows.push(Check::new(
            "contract.step-b.unit",
            &inst,
            step_b_s(&t, &s, &a, &inner).verify() && contract_step_b(&t, &s, &a, &inner).verify(),
        ));

        let one = Toeplitz::identity(&d);
        let k = Block2::diag(inner.forward.clone(), one);
        rows.push(Check::new("contract.step-c.start", &inst, contract_step_c(&z, &o, &inner).forward == Toeplitz::corner(&k)));
        rows.push(Check::new("contract.step-c.end", &inst, contract_step_c(&o, &z, &inner).forward.is_one()));
        rows.push(Check::new("contract.step-c.unit", &inst, contract_step_c(&t, &s, &inner).verify()));

        let ku = Unit {
            forward: ZOp::laurent_op(lift_loop::<R>(&a.forward)),
            inverse: ZOp::laurent_op(lift_loop::<R>(&a.inverse)),
        };
        match symbol_section(&ku) {
            Ok(sec) => {
                rows.push(Check::new("contract.g-symbol", &inst, sec.splits() && sec.symbol_matches()));
                let dense = on_safe_window(w, |w| {
                    let win = [(-w / 2, w / 2), (-w / 2, w / 2)];
                    let none = Bindings::none();
                    let lam = ZOp::split_diag(ku.inverse.clone(), ZOp::identity(&d));
                    let parts = [
                        truncate(&l_inflate_unit(&ku.forward), &win, &none)?,
                        truncate(&lam, &win, &none)?,
                        truncate(&ZOp::laurent_op(twisted_loop(&ku)), &win, &none)?,
                    ];
                    Ok((dense_chain(&parts)?, truncate(&sec.product, &win, &none)?))
                });
                rows.push(Check::from_result("contract.g-symbol.dense", format!("{inst} window from {w}"), dense));
            }
            Err(e) => rows.push(Check::error("contract.g-symbol", &inst, e)),
        }
        rows
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pythagorean_grid;

    #[test]
    fn toeplitz_and_contract_small() {
        let cfg = SuiteConfig { instances: 3, window: 4, points: pythagorean_grid(2), ..Default::default() };
        for c in toeplitz_suite(&cfg).into_iter().chain(contract_suite(&SuiteConfig { instances: 2, ..cfg })) {
            assert!(c.pass, "{c:?}");
        }
    }
}
