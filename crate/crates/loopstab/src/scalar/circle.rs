use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{Poly, RatFunc};
use super::ring::{Field, Ring, Scalar};
use super::Rational;
use crate::error::Error;

/// p + q·s over ℚ(t) with s² = 1 − t².
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircleScalar {
    pub p: RatFunc,
    pub q: RatFunc,
}

fn one_minus_t2() -> RatFunc {
    RatFunc::poly(Poly::new(vec![Rational::one(), Rational::zero(), -Rational::one()]))
}

impl CircleScalar {
    pub fn new(p: RatFunc, q: RatFunc) -> Self {
        CircleScalar { p, q }
    }

    pub fn t() -> Self {
        CircleScalar::new(RatFunc::t(), RatFunc::zero(&()))
    }

    pub fn s() -> Self {
        CircleScalar::new(RatFunc::zero(&()), RatFunc::one(&()))
    }

    pub fn from_ratfunc(p: RatFunc) -> Self {
        CircleScalar::new(p, RatFunc::zero(&()))
    }

    /// True when the value lies in ℚ[t]: no s-part and trivial denominator.
    pub fn is_polynomial_in_t(&self) -> bool {
        self.q.is_zero() && self.p.is_polynomial()
    }

    pub fn eval(&self, point: &CirclePoint) -> Result<Rational, Error> {
        let (t, s) = match point {
            CirclePoint::Symbolic => return Err(Error::SymbolicPoint),
            CirclePoint::Rational { t, s } => (t, s),
        };
        let p = self.p.eval(t).ok_or(Error::DenominatorVanishes)?;
        let q = self.q.eval(t).ok_or(Error::DenominatorVanishes)?;
        Ok(&p + &(&q * s))
    }
}

impl fmt::Debug for CircleScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{:?}", self.p),
            (true, false) => write!(f, "({:?})s", self.q),
            _ => write!(f, "{:?} + ({:?})s", self.p, self.q),
        }
    }
}

impl Ring for CircleScalar {
    type Ctx = ();
    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        CircleScalar::new(RatFunc::zero(&()), RatFunc::zero(&()))
    }
    fn one(_: &()) -> Self {
        CircleScalar::new(RatFunc::one(&()), RatFunc::zero(&()))
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        CircleScalar::new(self.p.add(&o.p), self.q.add(&o.q))
    }
    fn neg(&self) -> Self {
        CircleScalar::new(self.p.neg(), self.q.neg())
    }
    fn scale_q(&self, q: &Rational) -> Self {
        CircleScalar::new(self.p.scale_q(q), self.q.scale_q(q))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.q.is_zero() && o.q.is_zero() {
            return CircleScalar::from_ratfunc(self.p.mul(&o.p));
        }
        let pp = self.p.mul(&o.p);
        let qq = self.q.mul(&o.q).mul(&one_minus_t2());
        let pq = self.p.mul(&o.q).add(&self.q.mul(&o.p));
        CircleScalar::new(pp.add(&qq), pq)
    }
}

impl Scalar for CircleScalar {
    fn from_rational(q: &Rational) -> Self {
        CircleScalar::from_ratfunc(RatFunc::constant(q.clone()))
    }
    fn try_inv(&self) -> Option<Self> {
        // (p + qs)(p − qs) = p² − q²(1 − t²)
        let norm = self.p.mul(&self.p).sub(&self.q.mul(&self.q).mul(&one_minus_t2()));
        let ni = norm.inv()?;
        Some(CircleScalar::new(self.p.mul(&ni), self.q.neg().mul(&ni)))
    }
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Field for CircleScalar {}

/// A parameter on the quarter circle, either formal or an exact rational point.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum CirclePoint {
    Symbolic,
    Rational { t: Rational, s: Rational },
}

impl CirclePoint {
    pub fn rational(t: Rational, s: Rational) -> Result<Self, Error> {
        if &(&t * &t) + &(&s * &s) != Rational::one() {
            return Err(Error::NotOnCircle(format!("({t}, {s})")));
        }
        Ok(CirclePoint::Rational { t, s })
    }

    /// The point with the given t and s = √(1 − t²) ≥ 0, when that root is rational.
    pub fn from_t(t: Rational) -> Result<Self, Error> {
        let s = (&Rational::one() - &(&t * &t)).sqrt().ok_or_else(|| Error::NotOnCircle(format!("t = {t}")))?;
        Ok(CirclePoint::Rational { t, s })
    }

    /// θ = 0.
    pub fn start() -> Self {
        CirclePoint::Rational { t: Rational::zero(), s: Rational::one() }
    }

    /// θ = π/2.
    pub fn end() -> Self {
        CirclePoint::Rational { t: Rational::one(), s: Rational::zero() }
    }

    /// θ = −π/2.
    pub fn neg_end() -> Self {
        CirclePoint::Rational { t: -Rational::one(), s: Rational::zero() }
    }

    /// Point from the parametrization t = 2u/(1+u²), s = (1−u²)/(1+u²).
    pub fn from_u(u: &Rational) -> Self {
        let one = Rational::one();
        let den = &one + &(u * u);
        let t = &(&Rational::from_int(2) * u) / &den;
        let s = &(&one - &(u * u)) / &den;
        CirclePoint::Rational { t, s }
    }

    pub fn delta_plus(&self) -> bool {
        matches!(self, CirclePoint::Rational { t, .. } if *t == Rational::one())
    }

    pub fn delta_minus(&self) -> bool {
        matches!(self, CirclePoint::Rational { t, .. } if *t == -Rational::one())
    }

    pub fn ts(&self) -> Option<(&Rational, &Rational)> {
        match self {
            CirclePoint::Symbolic => None,
            CirclePoint::Rational { t, s } => Some((t, s)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CirclePoint::Symbolic => "symbolic".into(),
            CirclePoint::Rational { t, s } => format!("({t},{s})"),
        }
    }
}

/// n − 1 interior points u = j/(j+1) plus both endpoints, increasing in t.
pub fn pythagorean_grid(n: usize) -> Vec<CirclePoint> {
    assert!(n >= 1, "grid size must be positive");
    let mut pts = vec![CirclePoint::start()];
    for j in 1..n as i64 {
        pts.push(CirclePoint::from_u(&Rational::new(j, j + 1)));
    }
    pts.push(CirclePoint::end());
    pts.sort_by(|a, b| a.ts().unwrap().0.cmp(b.ts().unwrap().0));
    pts
}

/// The values of t and s in a concrete scalar ring together with the endpoint deltas.
#[derive(Clone, Debug, PartialEq)]
pub struct Coords<S> {
    pub t: S,
    pub s: S,
    pub delta_plus: bool,
    pub delta_minus: bool,
}

impl<S: Scalar> Coords<S> {
    pub fn one_minus_t2(&self) -> S {
        S::scalar_one().sub(&self.t.mul(&self.t))
    }

    /// t^k for k ≥ 0.
    pub fn tp(&self, k: i64) -> S {
        debug_assert!(k >= 0);
        self.t.pow(k as u32)
    }
}

impl Coords<Rational> {
    pub fn at(p: &CirclePoint) -> Result<Self, Error> {
        let (t, s) = p.ts().ok_or(Error::SymbolicPoint)?;
        Ok(Coords {
            t: t.clone(),
            s: s.clone(),
            delta_plus: p.delta_plus(),
            delta_minus: p.delta_minus(),
        })
    }
}

impl Coords<CircleScalar> {
    pub fn symbolic() -> Self {
        Coords { t: CircleScalar::t(), s: CircleScalar::s(), delta_plus: false, delta_minus: false }
    }

    /// Rational points embedded as constants; Symbolic stays formal.
    pub fn of(p: &CirclePoint) -> Self {
        match p {
            CirclePoint::Symbolic => Coords::symbolic(),
            CirclePoint::Rational { t, s } => Coords {
                t: CircleScalar::from_rational(t),
                s: CircleScalar::from_rational(s),
                delta_plus: p.delta_plus(),
                delta_minus: p.delta_minus(),
            },
        }
    }
}
