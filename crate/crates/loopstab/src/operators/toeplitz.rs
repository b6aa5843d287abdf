use std::collections::BTreeMap;
use std::fmt;

use super::zop::{fmap_insert, FMap, ZOp};
use crate::loops::Loop;
use crate::scalar::{Adjoint, Rational, Ring};

/// ℕ×ℕ operator W(symbol) + finite.
#[derive(Clone, PartialEq)]
pub struct Toeplitz<E: Ring> {
    symbol: Loop<E>,
    finite: FMap<E>,
}

impl<E: Ring> Toeplitz<E> {
    pub fn new(symbol: Loop<E>, finite: FMap<E>) -> Self {
        assert!(finite.keys().all(|&(i, j)| i >= 0 && j >= 0), "Toeplitz entries live on ℕ×ℕ");
        let finite = finite.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        Toeplitz { symbol, finite }
    }

    /// W(a).
    pub fn w(a: Loop<E>) -> Self {
        Toeplitz { symbol: a, finite: BTreeMap::new() }
    }

    pub fn finite_op(ctx: &E::Ctx, finite: FMap<E>) -> Self {
        Self::new(Loop::zero(ctx), finite)
    }

    pub fn identity(ctx: &E::Ctx) -> Self {
        Self::w(Loop::one(ctx))
    }

    pub fn unit(i: i64, j: i64, c: E) -> Self {
        let ctx = c.ctx();
        Self::finite_op(&ctx, BTreeMap::from([((i, j), c)]))
    }

    /// E(u) = 1 + (u − 1)e₀₀.
    pub fn corner(u: &E) -> Self {
        Self::identity(&u.ctx()).add(&Self::unit(0, 0, u.sub(&u.one_like())))
    }

    pub fn symbol(&self) -> &Loop<E> {
        &self.symbol
    }

    pub fn finite(&self) -> &FMap<E> {
        &self.finite
    }

    pub fn entry_ctx(&self) -> E::Ctx {
        self.symbol.coeff_ctx().clone()
    }

    pub fn entry(&self, i: i64, j: i64) -> E {
        let x = self.symbol.coeff(i - j);
        match self.finite.get(&(i, j)) {
            Some(f) => x.add(f),
            None => x,
        }
    }

    pub fn map<F: Ring>(&self, ctx: &F::Ctx, f: impl Fn(&E) -> F) -> Toeplitz<F> {
        Toeplitz::new(self.symbol.map(ctx, &f), self.finite.iter().map(|(k, x)| (*k, f(x))).collect())
    }

    /// The operator placed on the ℕ×ℕ quadrant of ℤ×ℤ, zero elsewhere.
    pub fn to_zop(&self) -> ZOp<E> {
        let ctx = self.entry_ctx();
        ZOp::new(Loop::zero(&ctx), self.symbol.clone(), self.finite.clone())
    }

    /// U^{+−}(a) on ℕ×ℕ: (i, k) ↦ a_{i+k+1}.
    pub fn hankel_pm(a: &Loop<E>) -> FMap<E> {
        let mut out = BTreeMap::new();
        for (&n, c) in a.terms() {
            for i in 0..n {
                out.insert((i, n - 1 - i), c.clone());
            }
        }
        out
    }

    /// U^{−+}(b) on ℕ×ℕ: (k, j) ↦ b_{−1−k−j}.
    pub fn hankel_mp(b: &Loop<E>) -> FMap<E> {
        let mut out = BTreeMap::new();
        for (&n, c) in b.terms() {
            let m = -1 - n;
            for k in 0..=m {
                out.insert((k, m - k), c.clone());
            }
        }
        out
    }
}

/// Product of two finite matrices.
pub(crate) fn fmap_mul<E: Ring>(p: &FMap<E>, q: &FMap<E>) -> FMap<E> {
    let mut rows: BTreeMap<i64, Vec<(i64, &E)>> = BTreeMap::new();
    for (&(k, j), x) in q {
        rows.entry(k).or_default().push((j, x));
    }
    let mut out = BTreeMap::new();
    for (&(i, k), a) in p {
        if let Some(r) = rows.get(&k) {
            for &(j, b) in r {
                fmap_insert(&mut out, (i, j), &a.mul(b));
            }
        }
    }
    out
}

impl<E: Ring> fmt::Debug for Toeplitz<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Toeplitz").field("symbol", &self.symbol).field("finite", &self.finite).finish()
    }
}

impl<E: Ring> Ring for Toeplitz<E> {
    type Ctx = E::Ctx;

    fn ctx(&self) -> E::Ctx {
        self.entry_ctx()
    }
    fn zero(ctx: &E::Ctx) -> Self {
        Self::finite_op(ctx, BTreeMap::new())
    }
    fn one(ctx: &E::Ctx) -> Self {
        Self::identity(ctx)
    }
    fn is_zero(&self) -> bool {
        self.symbol.is_zero() && self.finite.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut finite = self.finite.clone();
        for (k, x) in &o.finite {
            fmap_insert(&mut finite, *k, x);
        }
        Toeplitz { symbol: self.symbol.add(&o.symbol), finite }
    }
    fn neg(&self) -> Self {
        Toeplitz { symbol: self.symbol.neg(), finite: self.finite.iter().map(|(k, x)| (*k, x.neg())).collect() }
    }
    fn scale_q(&self, q: &Rational) -> Self {
        Toeplitz::new(self.symbol.scale_q(q), self.finite.iter().map(|(k, x)| (*k, x.scale_q(q))).collect())
    }

    /// (W(a)+p)(W(b)+q) = W(ab) − U^{+−}(a)U^{−+}(b) + W(a)q + pW(b) + pq.
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (&self.symbol, &o.symbol);
        let mut finite: FMap<E> = BTreeMap::new();
        for (k, x) in fmap_mul(&Self::hankel_pm(a), &Self::hankel_mp(b)) {
            fmap_insert(&mut finite, k, &x.neg());
        }
        for (&(k, j), x) in &o.finite {
            for (&n, c) in a.terms() {
                if k + n >= 0 {
                    fmap_insert(&mut finite, (k + n, j), &c.mul(x));
                }
            }
        }
        for (&(i, k), x) in &self.finite {
            for (&n, c) in b.terms() {
                if k - n >= 0 {
                    fmap_insert(&mut finite, (i, k - n), &x.mul(c));
                }
            }
        }
        for (k, x) in fmap_mul(&self.finite, &o.finite) {
            fmap_insert(&mut finite, k, &x);
        }
        Toeplitz { symbol: a.mul(b), finite }
    }
}

impl<E: Ring + Adjoint> Adjoint for Toeplitz<E> {
    fn adjoint(&self) -> Self {
        Toeplitz {
            symbol: self.symbol.adjoint(),
            finite: self.finite.iter().map(|(&(i, j), x)| ((j, i), x.adjoint())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Mat;

    type R = Mat<Rational>;

    fn z(k: i64) -> Toeplitz<R> {
        Toeplitz::w(Loop::z(&1, k))
    }

    #[test]
    fn bicyclic_relations() {
        let e00 = Toeplitz::unit(0, 0, R::scalar(1, Rational::one()));
        assert_eq!(z(1).mul(&z(-1)), Toeplitz::identity(&1).sub(&e00));
        assert!(z(-1).mul(&z(1)).is_one());
    }

    #[test]
    fn hankels() {
        let a: Loop<R> = Loop::z(&1, 2);
        let h = Toeplitz::hankel_pm(&a);
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        let b: Loop<R> = Loop::z(&1, -2);
        assert_eq!(Toeplitz::hankel_mp(&b).keys().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }
}
