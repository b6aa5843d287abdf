use super::rotation::{geometric_tail_sum, ShiftingRotation, Variant};
use crate::error::Result;
use crate::report::Check;
use crate::scalar::Scalar;

fn kron<S: Scalar>(i: i64, j: i64) -> S {
    if i == j {
        S::scalar_one()
    } else {
        S::scalar_zero()
    }
}

/// Entry (i, j) of R·R′ by prefix plus geometric tail.
pub fn coisometry_entry<S: Scalar>(rot: &ShiftingRotation<S>, i: i64, j: i64) -> Result<S> {
    let r = rot.t().mul(rot.t());
    geometric_tail_sum(|k| rot.left(i, k).mul(&rot.right(k, j)), i.max(j) + 1, &r)
}

/// Entry (i, j) of R·W(zⁿ)·R′ by prefix plus geometric tail.
pub fn shift_entry<S: Scalar>(rot: &ShiftingRotation<S>, n: i64, i: i64, j: i64) -> Result<S> {
    let r = rot.t().mul(rot.t());
    let start = i.max(j) + 1;
    if n >= 0 {
        geometric_tail_sum(|l| rot.left(i, l + n).mul(&rot.right(l, j)), start, &r)
    } else {
        geometric_tail_sum(|k| rot.left(i, k).mul(&rot.right(k - n, j)), start, &r)
    }
}

/// The rank-one matrix R·e_{n,m}·R′ written out entry by entry.
pub fn rank_one_display<S: Scalar>(rot: &ShiftingRotation<S>, n: i64, m: i64, i: i64, j: i64) -> S {
    let t = rot.t();
    let tp = |k: i64| t.pow(k as u32);
    let omt2 = S::scalar_one().sub(&t.mul(t));
    let (col, row) = match rot.variant() {
        Variant::Unitary => {
            let s = rot.s().expect("unitary rotation carries s").clone();
            let f = |n: i64, i: i64| -> Option<S> {
                match i {
                    0 if n >= 0 => Some(s.mul(&tp(n))),
                    i if i >= 1 && i <= n => Some(omt2.mul(&tp(n - i))),
                    i if i == n + 1 => Some(t.neg()),
                    _ => None,
                }
            };
            (f(n, i), f(m, j))
        }
        Variant::Poly => {
            let col = match i {
                i if i <= n => Some(omt2.mul(&tp(n - i))),
                i if i == n + 1 => Some(t.neg()),
                _ => None,
            };
            let row = match j {
                0 => Some(tp(m)),
                j if j <= m => Some(omt2.mul(&tp(m - j))),
                j if j == m + 1 => Some(t.neg()),
                _ => None,
            };
            (col, row)
        }
    };
    match (col, row) {
        (Some(a), Some(b)) => a.mul(&b),
        _ => S::scalar_zero(),
    }
}

/// Closed form of R·W(zⁿ)·R′ at (i, j).
pub fn shift_display<S: Scalar>(rot: &ShiftingRotation<S>, n: i64, i: i64, j: i64) -> S {
    let mut x = kron::<S>(i, j + n);
    for ((a, b), y) in rot.w_correction(n) {
        if (a, b) == (i, j) {
            x = x.add(&y);
        }
    }
    x
}

/// Parts a–d of the rotation lemma on indices below `window`.
pub fn key_lemma_suite<S: Scalar>(rot: &ShiftingRotation<S>, window: i64, label: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let w = window.max(4);

    let mut ok = true;
    for n in 0..w {
        for m in 0..w {
            let mut acc = S::scalar_zero();
            for k in 0..=n + 1 {
                acc = acc.add(&rot.right(n, k).mul(&rot.left(k, m)));
            }
            ok &= acc == kron(n, m);
        }
    }
    out.push(Check::new("rotation.isometry", label, ok));

    let res: Result<bool> = (|| {
        let mut ok = true;
        for i in 0..w {
            for j in 0..w {
                let mut want = kron::<S>(i, j);
                if i == 0 && j == 0 && rot.variant() == Variant::Unitary {
                    if rot.delta_plus() {
                        want = want.sub(&S::scalar_one());
                    }
                    if rot.delta_minus() {
                        want = want.sub(&S::scalar_one());
                    }
                }
                ok &= coisometry_entry(rot, i, j)? == want;
            }
        }
        Ok(ok)
    })();
    out.push(Check::from_result("rotation.coisometry", label, res));

    let mut ok = true;
    for n in 0..w {
        for m in 0..w {
            for i in 0..w + 2 {
                for j in 0..w + 2 {
                    ok &= rot.left(i, n).mul(&rot.right(m, j)) == rank_one_display(rot, n, m, i, j);
                }
            }
        }
    }
    out.push(Check::new("rotation.rank-one", label, ok));

    let res: Result<bool> = (|| {
        let mut ok = true;
        for n in -w..=w {
            for i in 0..w + 2 {
                for j in 0..w + 2 {
                    ok &= shift_entry(rot, n, i, j)? == shift_display(rot, n, i, j);
                }
            }
        }
        Ok(ok)
    })();
    out.push(Check::from_result("rotation.shift", label, res));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{CirclePoint, CircleScalar, Rational};

    #[test]
    fn symbolic_unitary_suite_passes() {
        let rot = ShiftingRotation::<CircleScalar>::at(&CirclePoint::Symbolic, Variant::Unitary);
        for c in key_lemma_suite(&rot, 4, "symbolic") {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn endpoint_coisometry_drops_corner() {
        let rot = ShiftingRotation::<Rational>::at(&CirclePoint::end(), Variant::Unitary).unwrap();
        assert_eq!(coisometry_entry(&rot, 0, 0).unwrap(), Rational::zero());
        assert_eq!(coisometry_entry(&rot, 1, 1).unwrap(), Rational::one());
        for c in key_lemma_suite(&rot, 5, "end") {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn interior_point_tail_sum() {
        let p = CirclePoint::rational(Rational::new(3, 5), Rational::new(4, 5)).unwrap();
        let rot = ShiftingRotation::<Rational>::at(&p, Variant::Unitary).unwrap();
        assert_eq!(coisometry_entry(&rot, 0, 0).unwrap(), Rational::one());
        for c in key_lemma_suite(&rot, 8, "3/5") {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn poly_suite_formal_and_interior() {
        let rot = ShiftingRotation::poly_formal();
        for c in key_lemma_suite(&rot, 4, "formal") {
            assert!(c.pass, "{c:?}");
        }
        let rot = ShiftingRotation::<Rational>::at(&CirclePoint::from_u(&Rational::new(1, 3)), Variant::Poly).unwrap();
        for c in key_lemma_suite(&rot, 6, "u=1/3") {
            assert!(c.pass, "{c:?}");
        }
    }
}
