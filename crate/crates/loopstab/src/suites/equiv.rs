use super::algebra::rot;
use super::{on_safe_window, per_instance, SuiteConfig, MAX_WINDOW};
use crate::finite_linearize::{k_f, tower, u_f};
use crate::homotopies::{bott, eval_v, lambda_vq, linearize_u, linearize_u_unit, vconst_op, Variant};
use crate::loops::{lift_loop, Loop, RMat};
use crate::operators::{BlockView, ZOp};
use crate::oracle::{dense_chain, dense_mul, l_only_k_residuals, truncate, Bindings, DenseWindow};
use crate::random;
use crate::report::Check;
use crate::scalar::{CirclePoint, Mat, Rational, Ring};
use crate::toeplitz_contract::step_b_s;

type R = Rational;

/// Entries safe in `small` equal the entries of `large` at the same indices.
fn sound_in(small: &DenseWindow<R>, large: &DenseWindow<R>) -> bool {
    let n = small.size();
    let rows: Vec<(usize, usize)> =
        (0..n).filter(|&k| small.is_safe(k)).map(|k| {
            let (idx, c) = small.unflatten(k);
            (k, large.flatten(&idx, c))
        }).collect();
    rows.iter().all(|&(i, li)| rows.iter().all(|&(j, lj)| small.get(i, j) == large.get(li, lj)))
}

/// Structured products against dense truncations on nested windows.
pub fn oracle_equiv(cfg: &SuiteConfig) -> Vec<Check> {
    let d = cfg.d;
    let w = cfg.window.max(8);
    let pts: Vec<CirclePoint> = cfg.rational_points();
    let mut out = per_instance(cfg.instances, |i| {
        let mut r = cfg.rng("oracle", i);
        let a = random::loop_unit(&mut r, d, cfg.support);
        let b = random::loop_unit(&mut r, d, cfg.support);
        let p = &pts[i % pts.len()];
        let inst = format!("unit #{i} {}", p.label());
        let none = Bindings::none();
        let Ok(rt) = rot(p, Variant::Unitary) else {
            return vec![Check::new("oracle.point", &inst, false)];
        };
        let mut rows = Vec::new();

        let ua = linearize_u_unit(&rt, &a);
        let ub = linearize_u_unit(&rt, &b);
        let uab = ua.forward.mul(&ub.forward);
        rows.push(Check::from_result("oracle.zop-product", &inst, on_safe_window(w, |w| {
            let win = [(-w, w)];
            let prod = dense_mul(&truncate(&ua.forward, &win, &none)?, &truncate(&ub.forward, &win, &none)?)?;
            Ok((prod, truncate(&uab, &win, &none)?))
        })));
        rows.push(Check::from_result("oracle.budget-sound", &inst, (|| {
            let mut w = w;
            loop {
                let win = [(-w, w)];
                let small = dense_mul(&truncate(&ua.forward, &win, &none)?, &truncate(&ub.forward, &win, &none)?)?;
                if small.safe_count() > 0 || w >= MAX_WINDOW {
                    let exact = truncate(&uab, &[(-2 * w, 2 * w)], &none)?;
                    return Ok(small.safe_count() > 0 && sound_in(&small, &exact));
                }
                w += 4;
            }
        })()));

        let v = Bindings::v(R::new(1, 2));
        let fa = lift_loop::<R>(&a.forward);
        let ia = lift_loop::<R>(&a.inverse);
        let (ufa, uia) = (linearize_u(&rt, &fa), linearize_u(&rt, &ia));
        rows.push(Check::from_result("oracle.linearize-u", &inst, on_safe_window(w, |w| {
            let win = [(-w, w)];
            let prod = dense_mul(&truncate(&ufa, &win, &v)?, &truncate(&uia, &win, &v)?)?;
            Ok((prod, truncate(&ZOp::<RMat>::identity(&d), &win, &none)?))
        })));

        let bo = bott(&a);
        rows.push(Check::from_result("oracle.bott", &inst, on_safe_window(w, |w| {
            let win = [(-w, w)];
            let t = truncate(bo.op(), &win, &none)?;
            Ok((dense_mul(&t, &t)?, truncate(&ZOp::<RMat>::identity(&d), &win, &none)?))
        })));
        rows.push(Check::from_result("oracle.block-view", &inst, (|| {
            let x = ua.forward.add(&ZOp::unit(-1, 2, Mat::scalar(d, R::from_int(3))));
            let back = BlockView::of(&x).assemble();
            truncate(&back, &[(-w, w)], &none)?.agrees_with(&truncate(&x, &[(-w, w)], &none)?)
        })()));

        let s = 1 + i % cfg.s.max(1);
        let dec = random::decomposition(&mut r, d, s);
        let v2 = Bindings::v(R::from_int(2));
        rows.push(Check::from_result("oracle.tower", &inst, (|| {
            let tw = tower::<R>(&dec, &rt)?;
            let mut ok = true;
            for (k, f) in dec.factors.iter().enumerate() {
                let u = linearize_u(&rt, &lift_loop(&f.forward));
                let u1_inv = vconst_op(&linearize_u_unit(&rt, f).inverse);
                ok &= on_safe_window(w, |w| {
                    let win = [(-w, w)];
                    let parts = [
                        truncate(&u, &win, &v2)?,
                        truncate(&tw.h[k].forward, &win, &v2)?,
                        truncate(&u1_inv, &win, &v2)?,
                    ];
                    Ok((dense_chain(&parts)?, truncate(&tw.h_hat[k].forward, &win, &v2)?))
                })?;
            }
            Ok(ok)
        })()));
        rows.push(Check::from_result("oracle.k_f", &inst, (|| {
            let tw = tower::<R>(&dec, &rt)?;
            let h = R::new(1, 3);
            let uf = u_f(&dec, &rt, &tw, &h);
            let uf1_inv = vconst_op(&eval_v(&uf.inverse, &R::one()));
            let kf = k_f(&dec, &rt, &tw, &h);
            on_safe_window(w, |w| {
                let win = [(-w, w)];
                let parts = [
                    truncate(&lambda_vq::<R>(d, -1), &win, &v2)?,
                    truncate(&uf.forward, &win, &v2)?,
                    truncate(&lambda_vq::<R>(d, 1), &win, &v2)?,
                    truncate(&uf1_inv, &win, &v2)?,
                ];
                Ok((dense_chain(&parts)?, truncate(&kf, &win, &v2)?))
            })
        })()));

        let inner = random::toeplitz_unit(&mut r, d, 1).lift::<R>();
        let (t, c) = (R::new(3, 5), R::new(4, 5));
        let sm = step_b_s(&t, &c, &a, &inner);
        let one = sm.forward.mul(&sm.inverse);
        rows.push(Check::from_result("oracle.block2", &inst, on_safe_window(w / 2, |w| {
            let bw = [(0, 2), (-w, w)];
            let prod = dense_mul(&truncate(&sm.forward, &bw, &none)?, &truncate(&sm.inverse, &bw, &none)?)?;
            Ok((prod, truncate(&one, &bw, &none)?))
        }).map(|ok| ok && one.is_one())));
        rows
    });
    let one = Mat::scalar(1, R::one());
    let a = Loop::constant(one.clone()).add(&Loop::monomial(1, one.scale(&R::new(-1, 2))));
    let tol = 1.0 / f64::from(1u32 << 20);
    out.push(Check::from_result(
        "oracle.l-only",
        "1 - z/2 order 24 window 32 v=1/2",
        l_only_k_residuals(&a, 24, 32, &R::new(1, 2)).map(|r| r.iter().all(|x| *x < tol)),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::pythagorean_grid;

    #[test]
    fn equivalence_small() {
        let cfg = SuiteConfig { instances: 3, window: 6, points: pythagorean_grid(2), ..Default::default() };
        for c in oracle_equiv(&cfg) {
            assert!(c.pass, "{c:?}");
        }
    }
}
