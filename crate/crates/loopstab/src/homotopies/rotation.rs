use crate::error::{Error, Result};
use crate::scalar::{CirclePoint, CircleScalar, Coords, RatFunc, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// C(θ) and its transpose.
    Unitary,
    /// C̃(θ) = E(s)C(θ) and C̃′(θ) = C(θ)†E(1/s); entries lie in ℚ[t].
    Poly,
}

/// The shifting rotation at one point: the left factor R (C or C̃) and the
/// right factor R′ (C† or C̃′). Columns of R and rows of R′ are finite.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftingRotation<S> {
    variant: Variant,
    t: S,
    s: Option<S>,
    delta_plus: bool,
    delta_minus: bool,
}

impl<S: Scalar> ShiftingRotation<S> {
    pub fn unitary(c: Coords<S>) -> Self {
        ShiftingRotation {
            variant: Variant::Unitary,
            t: c.t,
            s: Some(c.s),
            delta_plus: c.delta_plus,
            delta_minus: c.delta_minus,
        }
    }

    /// Polynomial pair at a value of t. Defined for |t| < 1.
    pub fn poly(t: S) -> Self {
        ShiftingRotation { variant: Variant::Poly, t, s: None, delta_plus: false, delta_minus: false }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn t(&self) -> &S {
        &self.t
    }

    pub fn delta_plus(&self) -> bool {
        self.delta_plus
    }

    pub fn delta_minus(&self) -> bool {
        self.delta_minus
    }

    /// s = cos θ; absent for the polynomial pair.
    pub fn s(&self) -> Option<&S> {
        self.s.as_ref()
    }

    fn s_val(&self) -> &S {
        self.s.as_ref().expect("unitary rotation carries s")
    }

    fn tp(&self, k: i64) -> S {
        self.t.pow(k as u32)
    }

    fn omt2(&self) -> S {
        S::scalar_one().sub(&self.t.mul(&self.t))
    }

    /// Entry (i, k) of R.
    pub fn left(&self, i: i64, k: i64) -> S {
        if i < 0 || k < 0 {
            return S::scalar_zero();
        }
        if i == k + 1 {
            return self.t.neg();
        }
        if i > k {
            return S::scalar_zero();
        }
        match self.variant {
            Variant::Unitary if i == 0 => self.s_val().mul(&self.tp(k)),
            Variant::Unitary => {
                let s = self.s_val();
                s.mul(s).mul(&self.tp(k - i))
            }
            Variant::Poly => self.omt2().mul(&self.tp(k - i)),
        }
    }

    /// Entry (k, j) of R′.
    pub fn right(&self, k: i64, j: i64) -> S {
        match self.variant {
            Variant::Unitary => self.left(j, k),
            Variant::Poly => {
                if k < 0 || j < 0 {
                    S::scalar_zero()
                } else if j == k + 1 {
                    self.t.neg()
                } else if j == 0 {
                    self.tp(k)
                } else if j <= k {
                    self.omt2().mul(&self.tp(k - j))
                } else {
                    S::scalar_zero()
                }
            }
        }
    }

    /// Nonzero entries of column n of R.
    pub fn column(&self, n: i64) -> Vec<(i64, S)> {
        (0..=n + 1).map(|i| (i, self.left(i, n))).filter(|(_, x)| !x.is_zero()).collect()
    }

    /// Nonzero entries of row m of R′.
    pub fn row(&self, m: i64) -> Vec<(i64, S)> {
        (0..=m + 1).map(|j| (j, self.right(m, j))).filter(|(_, x)| !x.is_zero()).collect()
    }

    fn delta_sum(&self, n: i64) -> S {
        let mut d = S::scalar_zero();
        if self.delta_plus {
            d = d.add(&S::scalar_one());
        }
        if self.delta_minus {
            d = d.add(&S::from_int(if n.rem_euclid(2) == 0 { 1 } else { -1 }));
        }
        d
    }

    /// R·W(zⁿ)·R′ − W(zⁿ), including the endpoint delta terms.
    pub fn w_correction(&self, n: i64) -> Vec<((i64, i64), S)> {
        let m = n.abs();
        let mut out = Vec::new();
        match self.variant {
            Variant::Unitary => {
                let s = self.s_val().clone();
                let head = if m == 0 { S::scalar_zero() } else { self.tp(m) };
                out.push((0, head.sub(&self.delta_sum(m))));
                for i in 1..m {
                    out.push((i, self.tp(m - i).mul(&s)));
                }
                if m > 0 {
                    out.push((m, s.sub(&S::scalar_one())));
                }
            }
            Variant::Poly => {
                if n > 0 {
                    for i in 0..m {
                        out.push((i, self.tp(m - i)));
                    }
                } else if n < 0 {
                    out.push((0, self.tp(m)));
                    for j in 1..m {
                        out.push((j, self.omt2().mul(&self.tp(m - j))));
                    }
                    out.push((m, self.t.mul(&self.t).neg()));
                }
                if m == 0 {
                    return Vec::new();
                }
            }
        }
        out.into_iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| if n >= 0 { ((k, 0), x) } else { ((0, k), x) })
            .collect()
    }
}

impl ShiftingRotation<CircleScalar> {
    /// Coordinates embedded in the circle ring; Symbolic stays formal.
    pub fn at(p: &CirclePoint, variant: Variant) -> Self {
        let c = Coords::<CircleScalar>::of(p);
        match variant {
            Variant::Unitary => Self::unitary(c),
            Variant::Poly => Self::poly(c.t),
        }
    }
}

impl ShiftingRotation<Rational> {
    pub fn at(p: &CirclePoint, variant: Variant) -> Result<Self> {
        let c = Coords::<Rational>::at(p)?;
        Ok(match variant {
            Variant::Unitary => Self::unitary(c),
            Variant::Poly => Self::poly(c.t),
        })
    }
}

impl ShiftingRotation<RatFunc> {
    /// C̃, C̃′ with t kept formal over ℚ(t).
    pub fn poly_formal() -> Self {
        Self::poly(RatFunc::t())
    }
}

/// Σ_{k ≥ 0} f(k) when f is geometric with the given ratio from `start` on.
///
/// The ratio is checked on the first terms of the tail; a zero tail needs no
/// division.
pub fn geometric_tail_sum<S: Scalar>(f: impl Fn(i64) -> S, start: i64, ratio: &S) -> Result<S> {
    let mut acc = S::scalar_zero();
    for k in 0..start {
        acc = acc.add(&f(k));
    }
    let (a0, a1, a2) = (f(start), f(start + 1), f(start + 2));
    if a1 != a0.mul(ratio) || a2 != a1.mul(ratio) {
        return Err(Error::NotInvertible("tail is not geometric".into()));
    }
    if a0.is_zero() {
        return Ok(acc);
    }
    let denom = S::scalar_one().sub(ratio).try_inv().ok_or(Error::DenominatorVanishes)?;
    Ok(acc.add(&a0.mul(&denom)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn columns_match_display() {
        let c = ShiftingRotation::<CircleScalar>::at(&CirclePoint::Symbolic, Variant::Unitary);
        let col0 = c.column(0);
        assert_eq!(col0, vec![(0, CircleScalar::s()), (1, CircleScalar::t().neg())]);
        let p = ShiftingRotation::<Rational>::at(&CirclePoint::from_u(&r(1, 2)), Variant::Unitary).unwrap();
        // t = 4/5, s = 3/5
        assert_eq!(p.left(0, 2), r(3, 5) * r(16, 25));
        assert_eq!(p.left(1, 2), r(9, 25) * r(4, 5));
        assert_eq!(p.left(3, 2), r(-4, 5));
        assert_eq!(p.left(3, 1), Rational::zero());
    }

    #[test]
    fn endpoint_is_shift() {
        let c = ShiftingRotation::<Rational>::at(&CirclePoint::end(), Variant::Unitary).unwrap();
        for i in 0..5 {
            for k in 0..5 {
                let want = if i == k + 1 { -Rational::one() } else { Rational::zero() };
                assert_eq!(c.left(i, k), want);
            }
        }
    }

    #[test]
    fn poly_factors_are_polynomial() {
        let c = ShiftingRotation::poly_formal();
        for i in 0..4 {
            for k in 0..4 {
                assert!(c.left(i, k).is_polynomial());
                assert!(c.right(i, k).is_polynomial());
            }
        }
        assert_eq!(c.right(0, 0), RatFunc::one(&()));
        assert_eq!(c.right(2, 3), RatFunc::t().neg());
    }

    #[test]
    fn tail_sum_geometric() {
        let half = r(1, 2);
        let s = geometric_tail_sum(|k| half.pow(k as i32), 0, &half).unwrap();
        assert_eq!(s, r(2, 1));
        assert!(geometric_tail_sum(|k| r(k, 1), 0, &half).is_err());
    }
}
