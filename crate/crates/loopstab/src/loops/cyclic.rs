use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Adjoint, Mat, Rational, Ring, Scalar, VLaurent, VMat};

/// Finite Laurent polynomial Σ aₙ zⁿ with coefficients in a ring `E`.
#[derive(Clone, PartialEq)]
pub struct Loop<E: Ring> {
    ctx: E::Ctx,
    terms: BTreeMap<i64, E>,
}

impl<E: Ring> Loop<E> {
    pub fn zero(ctx: &E::Ctx) -> Self {
        Loop { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &E::Ctx) -> Self {
        Self::constant(E::one(ctx))
    }

    pub fn constant(c: E) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: i64, c: E) -> Self {
        let mut out = Self::zero(&c.ctx());
        out.add_term(k, &c);
        out
    }

    /// z^k with unit coefficient.
    pub fn z(ctx: &E::Ctx, k: i64) -> Self {
        Self::monomial(k, E::one(ctx))
    }

    pub fn from_terms(ctx: &E::Ctx, it: impl IntoIterator<Item = (i64, E)>) -> Self {
        let mut out = Self::zero(ctx);
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    pub fn add_term(&mut self, k: i64, c: &E) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                *e = e.add(c);
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn coeff_ctx(&self) -> &E::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<i64, E> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> E {
        self.terms.get(&k).cloned().unwrap_or_else(|| E::zero(&self.ctx))
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&E> {
        self.terms.get(&k)
    }

    /// Tight support bounds; `None` for the zero loop.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((*self.terms.keys().next()?, *self.terms.keys().next_back()?))
    }

    /// Largest |exponent| present, 0 for the zero loop.
    pub fn radius(&self) -> i64 {
        self.support().map_or(0, |(m, n)| m.abs().max(n.abs()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == 0)
    }

    /// z ↦ z⁻¹.
    pub fn reflect(&self) -> Self {
        Loop { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    /// Multiply by z^k.
    pub fn shift(&self, k: i64) -> Self {
        Loop { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(j, c)| (j + k, c.clone())).collect() }
    }

    pub fn scale_left(&self, c: &E) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(k, x)| (*k, c.mul(x))))
    }

    pub fn scale_right(&self, c: &E) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(k, x)| (*k, x.mul(c))))
    }

    /// Σ aₙ wⁿ for w = ±1.
    pub fn eval_sign(&self, w: i64) -> E {
        assert!(w == 1 || w == -1, "evaluation only at ±1");
        let mut acc = E::zero(&self.ctx);
        for (k, c) in &self.terms {
            if w == -1 && k.rem_euclid(2) == 1 {
                acc = acc.sub(c);
            } else {
                acc = acc.add(c);
            }
        }
        acc
    }

    pub fn map<F: Ring>(&self, ctx: &F::Ctx, f: impl Fn(&E) -> F) -> Loop<F> {
        Loop::from_terms(ctx, self.terms.iter().map(|(k, c)| (*k, f(c))))
    }
}

impl<E: Ring> fmt::Debug for Loop<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c:?}·z^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<E: Ring> Ring for Loop<E> {
    type Ctx = E::Ctx;

    fn ctx(&self) -> E::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &E::Ctx) -> Self {
        Loop::zero(ctx)
    }
    fn one(ctx: &E::Ctx) -> Self {
        Loop::one(ctx)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c);
        }
        out
    }
    fn neg(&self) -> Self {
        Loop { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }
    fn scale_q(&self, q: &Rational) -> Self {
        Self::from_terms(&self.ctx, self.terms.iter().map(|(k, c)| (*k, c.scale_q(q))))
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, &x.mul(y));
            }
        }
        out
    }
}

impl<E: Ring + Adjoint> Adjoint for Loop<E> {
    /// Coefficient n of a† is (a₋ₙ)*.
    fn adjoint(&self) -> Self {
        Loop { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(k, c)| (-k, c.adjoint())).collect() }
    }
}

/// Λ(a,b) = ½(1 + a + b − ab).
pub fn lambda_mix<E: Ring>(a: &E, b: &E) -> E {
    a.one_like().add(a).add(b).sub(&a.mul(b)).scale_q(&Rational::new(1, 2))
}

/// The linear loop Λ(z^power, q) = ½(1+q) + z^power·½(1−q).
pub fn mixer<K: Scalar>(q: &Mat<K>, power: i64) -> Loop<Mat<K>> {
    let z = Loop::z(&q.dim(), power);
    lambda_mix(&z, &Loop::constant(q.clone()))
}

/// Lift a rational-coefficient loop into another scalar ring.
pub fn lift_loop<K: Scalar>(a: &Loop<Mat<Rational>>) -> Loop<Mat<K>> {
    a.map(a.coeff_ctx(), |c| c.lift())
}

/// a(±v) as a matrix over the v-ring.
pub fn at_v<S: Scalar>(a: &Loop<Mat<S>>, sign: i64) -> VMat<S> {
    let d = *a.coeff_ctx();
    let mut acc = VMat::<S>::zero(&d);
    for (k, c) in a.terms() {
        let sgn = if sign < 0 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        let vk = VLaurent::monomial(*k, S::from_int(sgn));
        acc = acc.add(&c.map(|x| VLaurent::constant(x.clone()).mul(&vk)));
    }
    acc
}
