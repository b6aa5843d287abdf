use crate::error::{Error, Result};
use crate::homotopies::{eval_v, lambda_vq, linearize_u, vconst_op, ShiftingRotation, Variant};
use crate::loops::{at_v, Loop, RLoop, RMat};
use crate::operators::ZOp;
use crate::scalar::{vlift, CirclePoint, Mat, Rational, Ring};

use super::dense::{truncate, Bindings, DenseWindow};

/// a⁻¹ to a given order, with a·series − 1 kept exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedInverse {
    pub series: RLoop,
    pub order: usize,
    /// a·series − 1, supported past the order cutoff.
    pub residual: RLoop,
    /// ρ^{order+1}/(1 − ρ) for ρ the summed row-sum norms of a_m⁻¹a_{m+j}; absent when ρ ≥ 1.
    pub tail_bound: Option<Rational>,
}

fn row_sum_norm(m: &RMat) -> Rational {
    m.rows().iter().map(|r| r.iter().fold(Rational::zero(), |acc, x| acc.add(&x.abs()))).max().unwrap_or_else(Rational::zero)
}

/// Geometric-series inverse of a loop whose lowest coefficient is invertible:
/// a = a_m z^m (1 + r) and a⁻¹ ≈ Σ_{k≤order} (−r)ᵏ-terms · z^{−m} a_m⁻¹.
pub fn truncated_loop_inverse(a: &RLoop, order: usize) -> Result<TruncatedInverse> {
    let d = *a.coeff_ctx();
    let (m, top) = a.support().ok_or(Error::NoInvertibleLeadingStructure)?;
    let lead_inv = a.coeff(m).try_inverse().ok_or(Error::NoInvertibleLeadingStructure)?;
    let r: Vec<RMat> = (1..=top - m).map(|j| lead_inv.mul(&a.coeff(m + j))).collect();
    let mut b: Vec<RMat> = vec![Mat::one(&d)];
    for k in 1..=order {
        let mut acc = Mat::zero(&d);
        for (j, rj) in r.iter().enumerate().take(k) {
            acc = acc.sub(&rj.mul(&b[k - j - 1]));
        }
        b.push(acc);
    }
    let series = Loop::from_terms(&d, b.iter().enumerate().map(|(k, c)| (k as i64 - m, c.mul(&lead_inv))));
    let residual = a.mul(&series).sub(&Loop::one(&d));
    let rho = r.iter().fold(Rational::zero(), |acc, x| acc.add(&row_sum_norm(x)));
    let tail_bound = (rho < Rational::one()).then(|| {
        rho.pow(order as i32 + 1).mul(&Rational::one().sub(&rho).recip().expect("ρ < 1"))
    });
    Ok(TruncatedInverse { series, order, residual, tail_bound })
}

/// The left factor of the shifting rotation on [lo, hi)², lo ≥ 0.
pub fn rotation_window(rot: &ShiftingRotation<Rational>, lo: i64, hi: i64) -> DenseWindow<Rational> {
    let n = (hi - lo) as usize;
    let mut w = DenseWindow::identity(vec![(lo, hi)], 1);
    for i in 0..n {
        for k in 0..n {
            w.entries[i * n + k] = rot.left(lo + i as i64, lo + k as i64);
        }
    }
    w.band = vec![hi - lo];
    w
}

/// Residuals of the K endpoint displays for a loop whose inverse is only
/// available as a truncated series: θ = π/2 against E_ℤ(a(v)a(1)⁻¹) and
/// θ = 0 against Λ(v,Q)⁻¹Λ(v,B) with B = U(a)·Q·U(a)⁻¹ from the series,
/// together with |B² − 1|. Measured on [−window/2, window/2) at the given v.
pub fn l_only_k_residuals(a: &RLoop, order: usize, window: i64, v: &Rational) -> Result<[f64; 3]> {
    let d = *a.coeff_ctx();
    let inv = truncated_loop_inverse(a, order)?;
    let b = Bindings::v(v.clone());
    let win = [(-window / 2, window / 2)];
    let k_at = |p: &CirclePoint| -> Result<ZOp<crate::scalar::VMat<Rational>>> {
        let rot = ShiftingRotation::<Rational>::at(p, Variant::Unitary)?;
        let u_inv_1 = vconst_op(&eval_v(&linearize_u(&rot, &inv.series), &Rational::one()));
        Ok(lambda_vq::<Rational>(d, -1).mul(&linearize_u(&rot, a)).mul(&lambda_vq(d, 1)).mul(&u_inv_1))
    };
    let a1_inv = a.eval_sign(1).try_inverse().ok_or(Error::NotInvertible("a(1)".into()))?;
    let end_display = ZOp::corner(&at_v(a, 1).mul(&vlift(&a1_inv)));
    let r_end = truncate(&k_at(&CirclePoint::end())?, &win, &b)?.max_diff(&truncate(&end_display, &win, &b)?)?;

    let q = crate::operators::q_op::<RMat>(&d);
    let bott = ZOp::laurent_op(a.clone()).mul(&q).mul(&ZOp::laurent_op(inv.series.clone()));
    let vb = vconst_op(&bott);
    let one = ZOp::identity(&d);
    let vv = one.scale_q(v);
    let lam_b = one.add(&vv).add(&vb).sub(&vv.mul(&vb)).scale_q(&Rational::new(1, 2));
    let start_display = lambda_vq::<Rational>(d, -1).mul(&lam_b);
    let start_display = eval_v(&start_display, v);
    let k0 = eval_v(&k_at(&CirclePoint::start())?, v);
    let none = Bindings::none();
    let r_start = truncate(&k0, &win, &none)?.max_diff(&truncate(&start_display, &win, &none)?)?;
    let sq = truncate(&bott.mul(&bott), &win, &none)?.max_diff(&truncate(&ZOp::<RMat>::identity(&d), &win, &none)?)?;
    Ok([r_end, r_start, sq])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(k: i64, c: Rational) -> RLoop {
        Loop::monomial(k, Mat::scalar(1, c))
    }

    #[test]
    fn geometric_series() {
        let a = sc(0, Rational::one()).add(&sc(1, Rational::new(-1, 2)));
        let inv = truncated_loop_inverse(&a, 4).unwrap();
        let want = (0..=4).fold(Loop::zero(&1), |acc, k| acc.add(&sc(k, Rational::new(1, 1 << k))));
        assert_eq!(inv.series, want);
        assert_eq!(inv.residual.support(), Some((5, 5)));
        assert_eq!(inv.tail_bound, Some(Rational::new(1, 16)));
        let z = sc(0, Rational::zero()).add(&sc(1, Rational::one())).add(&sc(2, Rational::from_int(3)));
        assert!(truncated_loop_inverse(&z, 3).unwrap().residual.support().unwrap().0 > 3);
        let sing = Loop::monomial(0, Mat::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(truncated_loop_inverse(&sing, 3), Err(Error::NoInvertibleLeadingStructure));
    }

    #[test]
    fn rotation_columns() {
        let p = CirclePoint::rational(Rational::new(3, 5), Rational::new(4, 5)).unwrap();
        let rot = ShiftingRotation::<Rational>::at(&p, Variant::Unitary).unwrap();
        let w = rotation_window(&rot, 0, 6);
        let (t, s) = (Rational::new(3, 5), Rational::new(4, 5));
        for k in 0..6 {
            assert_eq!(*w.get(0, k), s.mul(&t.pow(k as i32)));
            for i in 1..6 {
                let want = if i == k + 1 {
                    t.neg()
                } else if i <= k {
                    s.mul(&s).mul(&t.pow((k - i) as i32))
                } else {
                    Rational::zero()
                };
                assert_eq!(*w.get(i, k), want);
            }
        }
    }

    #[test]
    fn l_only_factor_endpoints() {
        let a = sc(0, Rational::one()).add(&sc(1, Rational::new(-1, 2)));
        let r = l_only_k_residuals(&a, 24, 32, &Rational::new(1, 2)).unwrap();
        let eps = 2f64.powi(-20);
        assert!(r.iter().all(|x| *x < eps), "{r:?}");
        assert!(r[1] > 0.0);
    }
}
