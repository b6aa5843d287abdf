use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::loops::Loop;
use crate::scalar::{Adjoint, Mat, Rational, Ring, Scalar};

/// Finitely supported matrix keyed by (row, column).
pub type FMap<E> = BTreeMap<(i64, i64), E>;

pub(crate) fn fmap_insert<E: Ring>(m: &mut FMap<E>, key: (i64, i64), x: &E) {
    if x.is_zero() {
        return;
    }
    match m.get_mut(&key) {
        Some(e) => {
            *e = e.add(x);
            if e.is_zero() {
                m.remove(&key);
            }
        }
        None => {
            m.insert(key, x.clone());
        }
    }
}

/// ℤ×ℤ operator U(laurent) + P(half) + finite, where P(h) is the Toeplitz
/// operator W(h) placed on the ℕ×ℕ quadrant and zero elsewhere.
///
/// The split is canonical: laurent is read off far in the negative quadrant,
/// laurent + half far in the positive one.
#[derive(Clone, PartialEq)]
pub struct ZOp<E: Ring> {
    laurent: Loop<E>,
    half: Loop<E>,
    finite: FMap<E>,
}

impl<E: Ring> ZOp<E> {
    pub fn new(laurent: Loop<E>, half: Loop<E>, finite: FMap<E>) -> Self {
        let finite = finite.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        ZOp { laurent, half, finite }
    }

    pub fn laurent_op(a: Loop<E>) -> Self {
        let ctx = a.coeff_ctx().clone();
        ZOp { laurent: a, half: Loop::zero(&ctx), finite: BTreeMap::new() }
    }

    pub fn finite_op(ctx: &E::Ctx, finite: FMap<E>) -> Self {
        Self::new(Loop::zero(ctx), Loop::zero(ctx), finite)
    }

    pub fn identity(ctx: &E::Ctx) -> Self {
        Self::laurent_op(Loop::one(ctx))
    }

    /// c·e_{i,j}.
    pub fn unit(i: i64, j: i64, c: E) -> Self {
        let ctx = c.ctx();
        Self::finite_op(&ctx, BTreeMap::from([((i, j), c)]))
    }

    /// `minus` on the negative diagonal, `plus` on the nonnegative one.
    pub fn split_diag(minus: E, plus: E) -> Self {
        let h = plus.sub(&minus);
        Self::new(Loop::constant(minus), Loop::constant(h), BTreeMap::new())
    }

    /// 1 + (u − 1)e₀₀.
    pub fn corner(u: &E) -> Self {
        let one = u.one_like();
        Self::identity(&u.ctx()).add(&Self::unit(0, 0, u.sub(&one)))
    }

    pub fn laurent(&self) -> &Loop<E> {
        &self.laurent
    }

    pub fn half(&self) -> &Loop<E> {
        &self.half
    }

    pub fn finite(&self) -> &FMap<E> {
        &self.finite
    }

    /// Symbol seen far in the negative quadrant.
    pub fn symbol_minus(&self) -> Loop<E> {
        self.laurent.clone()
    }

    /// Symbol seen far in the positive quadrant.
    pub fn symbol_plus(&self) -> Loop<E> {
        self.laurent.add(&self.half)
    }

    pub fn is_finite(&self) -> bool {
        self.laurent.is_zero() && self.half.is_zero()
    }

    pub fn entry_ctx(&self) -> E::Ctx {
        self.laurent.coeff_ctx().clone()
    }

    pub fn entry(&self, i: i64, j: i64) -> E {
        let mut x = self.laurent.coeff(i - j);
        if i >= 0 && j >= 0 {
            if let Some(h) = self.half.coeff_ref(i - j) {
                x = x.add(h);
            }
        }
        if let Some(f) = self.finite.get(&(i, j)) {
            x = x.add(f);
        }
        x
    }

    /// Entry of the symbol part only.
    fn symbol_entry(&self, i: i64, j: i64) -> E {
        let mut x = self.laurent.coeff(i - j);
        if i >= 0 && j >= 0 {
            if let Some(h) = self.half.coeff_ref(i - j) {
                x = x.add(h);
            }
        }
        x
    }

    /// Union of the diagonal offsets used by laurent and half.
    pub fn band(&self) -> Option<(i64, i64)> {
        match (self.laurent.support(), self.half.support()) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a),
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
        }
    }

    /// (row_min, row_max, col_min, col_max) of the finite part.
    pub fn finite_bounds(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.finite.keys();
        let &(i, j) = it.next()?;
        Some(it.fold((i, i, j, j), |(r0, r1, c0, c1), &(i, j)| (r0.min(i), r1.max(i), c0.min(j), c1.max(j))))
    }

    fn radius(&self) -> i64 {
        self.laurent.radius().max(self.half.radius())
    }

    /// Nonzero entries of row i.
    pub fn row(&self, i: i64) -> BTreeMap<i64, E> {
        let mut out: BTreeMap<i64, E> = BTreeMap::new();
        let mut put = |j: i64, x: &E| {
            if x.is_zero() {
                return;
            }
            match out.get_mut(&j) {
                Some(e) => *e = e.add(x),
                None => {
                    out.insert(j, x.clone());
                }
            }
        };
        for (n, c) in self.laurent.terms() {
            put(i - n, c);
        }
        if i >= 0 {
            for (n, c) in self.half.terms() {
                if i - n >= 0 {
                    put(i - n, c);
                }
            }
        }
        for (&(_, j), x) in self.finite.range((i, i64::MIN)..=(i, i64::MAX)) {
            put(j, x);
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn map<F: Ring>(&self, ctx: &F::Ctx, f: impl Fn(&E) -> F) -> ZOp<F> {
        ZOp::new(
            self.laurent.map(ctx, &f),
            self.half.map(ctx, &f),
            self.finite.iter().map(|(k, x)| (*k, f(x))).collect(),
        )
    }

    /// Entries (i, j) ↦ (−1−i, −1−j): swaps the two half lines.
    pub fn reflect_halves(&self) -> Self {
        // laurent l ↦ l(z⁻¹); the positive-quadrant band moves to the negative one
        let h = self.half.reflect();
        let laurent = self.laurent.reflect().add(&h);
        let half = h.neg();
        let finite = self.finite.iter().map(|(&(i, j), x)| ((-1 - i, -1 - j), x.clone())).collect();
        self.fix_boundary(ZOp::new(laurent, half, finite), |i, j| (-1 - i, -1 - j))
    }

    /// Correct `cand`, a relabeling of self by the involution `f`, on the
    /// band entries that straddle the quadrant boundary.
    fn fix_boundary(&self, cand: Self, f: impl Fn(i64, i64) -> (i64, i64)) -> Self {
        let b = self.radius() + 1;
        let mut finite = cand.finite.clone();
        for i in -b..=b {
            for j in -b..=b {
                let (p, q) = f(i, j);
                let want = self.symbol_entry(p, q);
                let got = cand.symbol_entry(i, j);
                fmap_insert(&mut finite, (i, j), &want.sub(&got));
            }
        }
        ZOp::new(cand.laurent, cand.half, finite)
    }

    /// Q̂XQ̂ with Q̂ = Σ e_{−n,n}: entries (i, j) ↦ (−i, −j).
    pub fn conj_qhat(&self) -> Self {
        let h = self.half.reflect();
        let laurent = self.laurent.reflect().add(&h);
        let half = h.neg();
        let finite: FMap<E> = self.finite.iter().map(|(&(i, j), x)| ((-i, -j), x.clone())).collect();
        self.fix_boundary(ZOp::new(laurent, half, finite), |i, j| (-i, -j))
    }

    /// Keep the finite part only inside rows × cols.
    pub fn restrict_finite(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        ZOp {
            laurent: self.laurent.clone(),
            half: self.half.clone(),
            finite: self.finite.iter().filter(|(k, _)| keep(k.0, k.1)).map(|(k, x)| (*k, x.clone())).collect(),
        }
    }

    /// Exact product. The symbol parts multiply as loops; the finite part is
    /// obtained by evaluating every entry of the product inside a box that
    /// provably contains all deviations from the symbol part.
    fn product(&self, o: &Self) -> Self {
        let ctx = self.entry_ctx();
        let laurent = self.laurent.mul(&o.laurent);
        let half = self.symbol_plus().mul(&o.symbol_plus()).sub(&laurent);
        let w = self.radius() + o.radius() + 1;
        let (alo, ahi) = self.band().unwrap_or((0, 0));
        let (blo, bhi) = o.band().unwrap_or((0, 0));
        let (mut r0, mut r1, mut c0, mut c1) = (-w, w, -w, w);
        if let Some((a0, a1, b0, b1)) = self.finite_bounds() {
            r0 = r0.min(a0);
            r1 = r1.max(a1);
            c0 = c0.min(b0 - bhi);
            c1 = c1.max(b1 - blo);
        }
        if let Some((a0, a1, b0, b1)) = o.finite_bounds() {
            r0 = r0.min(a0 + alo);
            r1 = r1.max(a1 + ahi);
            c0 = c0.min(b0);
            c1 = c1.max(b1);
        }
        let mut out = ZOp { laurent, half, finite: BTreeMap::new() };
        let mut brows: BTreeMap<i64, BTreeMap<i64, E>> = BTreeMap::new();
        for i in r0..=r1 {
            let mut acc: BTreeMap<i64, E> = BTreeMap::new();
            for (k, a) in self.row(i) {
                let brow = brows.entry(k).or_insert_with(|| o.row(k));
                for (&j, b) in brow.range(c0..=c1) {
                    let x = a.mul(b);
                    match acc.get_mut(&j) {
                        Some(e) => *e = e.add(&x),
                        None => {
                            acc.insert(j, x);
                        }
                    }
                }
            }
            let mut cols: BTreeSet<i64> = acc.keys().copied().collect();
            for n in out.laurent.terms().keys().chain(out.half.terms().keys()) {
                if (c0..=c1).contains(&(i - n)) {
                    cols.insert(i - n);
                }
            }
            for j in cols {
                let got = acc.remove(&j).unwrap_or_else(|| E::zero(&ctx));
                let diff = got.sub(&out.symbol_entry(i, j));
                if !diff.is_zero() {
                    out.finite.insert((i, j), diff);
                }
            }
        }
        out
    }
}

impl<E: Ring> fmt::Debug for ZOp<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZOp")
            .field("laurent", &self.laurent)
            .field("half", &self.half)
            .field("finite", &self.finite)
            .finish()
    }
}

impl<E: Ring> Ring for ZOp<E> {
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
        self.laurent.is_zero() && self.half.is_zero() && self.finite.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut finite = self.finite.clone();
        for (k, x) in &o.finite {
            fmap_insert(&mut finite, *k, x);
        }
        ZOp { laurent: self.laurent.add(&o.laurent), half: self.half.add(&o.half), finite }
    }
    fn neg(&self) -> Self {
        ZOp {
            laurent: self.laurent.neg(),
            half: self.half.neg(),
            finite: self.finite.iter().map(|(k, x)| (*k, x.neg())).collect(),
        }
    }
    fn scale_q(&self, q: &Rational) -> Self {
        ZOp::new(
            self.laurent.scale_q(q),
            self.half.scale_q(q),
            self.finite.iter().map(|(k, x)| (*k, x.scale_q(q))).collect(),
        )
    }
    fn mul(&self, o: &Self) -> Self {
        self.product(o)
    }
}

impl<E: Ring + Adjoint> Adjoint for ZOp<E> {
    fn adjoint(&self) -> Self {
        ZOp {
            laurent: self.laurent.adjoint(),
            half: self.half.adjoint(),
            finite: self.finite.iter().map(|(&(i, j), x)| ((j, i), x.adjoint())).collect(),
        }
    }
}

impl<S: Scalar> ZOp<Mat<S>> {
    /// Two-sided inverse given inverses of both symbols.
    ///
    /// With B₀ = U(l⁻¹) + P((l+h)⁻¹ − l⁻¹) the product A·B₀ is 1 + G with G
    /// finite; 1 + G is inverted on the support of G.
    pub fn inverse_with(&self, minus_inv: &Loop<Mat<S>>, plus_inv: &Loop<Mat<S>>) -> Result<Self> {
        if !self.symbol_minus().mul(minus_inv).is_one() || !minus_inv.mul(&self.symbol_minus()).is_one() {
            return Err(Error::HintMismatch("negative-side symbol".into()));
        }
        if !self.symbol_plus().mul(plus_inv).is_one() || !plus_inv.mul(&self.symbol_plus()).is_one() {
            return Err(Error::HintMismatch("positive-side symbol".into()));
        }
        let b0 = ZOp::new(minus_inv.clone(), plus_inv.sub(minus_inv), BTreeMap::new());
        let g = self.mul(&b0).sub(&ZOp::identity(&self.entry_ctx()));
        debug_assert!(g.is_finite());
        let x = invert_one_plus(&g.finite, self.entry_ctx())?;
        let inv = b0.mul(&ZOp::identity(&self.entry_ctx()).add(&ZOp::finite_op(&self.entry_ctx(), x)));
        if !self.mul(&inv).is_one() || !inv.mul(self).is_one() {
            return Err(Error::SingularFiniteBlock);
        }
        Ok(inv)
    }

    /// Inverse when both symbols equal the forward loop of a known unit.
    pub fn inverse_uniform(&self, symbol_inv: &Loop<Mat<S>>) -> Result<Self> {
        self.inverse_with(symbol_inv, symbol_inv)
    }
}

/// (1 + G)⁻¹ − 1 for a finite G, by Gauss–Jordan over the scalars with unit pivots.
pub(crate) fn invert_one_plus<S: Scalar>(g: &FMap<Mat<S>>, d: usize) -> Result<FMap<Mat<S>>> {
    let idx: Vec<i64> = g.keys().flat_map(|&(i, j)| [i, j]).collect::<BTreeSet<_>>().into_iter().collect();
    if idx.is_empty() {
        return Ok(BTreeMap::new());
    }
    let pos: BTreeMap<i64, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let n = idx.len() * d;
    let zero = S::scalar_zero();
    let mut a = vec![vec![zero.clone(); n]; n];
    let mut b = vec![vec![zero.clone(); n]; n];
    for r in 0..n {
        a[r][r] = S::scalar_one();
        b[r][r] = S::scalar_one();
    }
    for (&(i, j), m) in g {
        let (pi, pj) = (pos[&i] * d, pos[&j] * d);
        for x in 0..d {
            for y in 0..d {
                a[pi + x][pj + y] = a[pi + x][pj + y].add(m.get(x, y));
            }
        }
    }
    for col in 0..n {
        let (piv, inv) = (col..n)
            .find_map(|r| a[r][col].try_inv().map(|x| (r, x)))
            .ok_or(Error::SingularFiniteBlock)?;
        a.swap(col, piv);
        b.swap(col, piv);
        for j in 0..n {
            a[col][j] = a[col][j].mul(&inv);
            b[col][j] = b[col][j].mul(&inv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    let x = a[col][j].mul(&f);
                    a[r][j] = a[r][j].sub(&x);
                }
                if !b[col][j].is_zero() {
                    let y = b[col][j].mul(&f);
                    b[r][j] = b[r][j].sub(&y);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    for (p, &i) in idx.iter().enumerate() {
        for (q, &j) in idx.iter().enumerate() {
            let m = Mat::from_fn(d, |x, y| {
                let v = b[p * d + x][q * d + y].clone();
                if p == q && x == y {
                    v.sub(&S::scalar_one())
                } else {
                    v
                }
            });
            if !m.is_zero() {
                out.insert((i, j), m);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, VLaurent};

    type R = Mat<Rational>;

    fn r(x: i64) -> R {
        Mat::scalar(1, Rational::from_int(x))
    }

    fn q_op() -> ZOp<R> {
        ZOp::split_diag(r(-1), r(1))
    }

    #[test]
    fn shift_products() {
        let z: ZOp<R> = ZOp::laurent_op(Loop::z(&1, 1));
        let zi = ZOp::laurent_op(Loop::z(&1, -1));
        assert!(z.mul(&zi).is_one());
        let e = ZOp::unit(0, 0, r(1));
        assert_eq!(e.mul(&e), e);
        let b = z.mul(&q_op()).mul(&zi);
        assert_eq!(b, q_op().sub(&ZOp::unit(0, 0, r(2))));
        assert_eq!(b.entry(1, 1), r(1));
        assert_eq!(b.entry(0, 0), r(-1));
    }

    #[test]
    fn inverses() {
        let a = ZOp::identity(&1).add(&ZOp::unit(0, 0, r(1)));
        let inv = a.inverse_uniform(&Loop::one(&1)).unwrap();
        assert_eq!(inv, ZOp::identity(&1).sub(&ZOp::unit(0, 0, R::scalar(1, Rational::new(1, 2)))));
        let z: ZOp<R> = ZOp::laurent_op(Loop::z(&1, 1));
        assert_eq!(z.inverse_uniform(&Loop::z(&1, -1)).unwrap(), ZOp::laurent_op(Loop::z(&1, -1)));
        let v = Mat::scalar(1, VLaurent::<Rational>::vpow(1));
        let lam = ZOp::split_diag(v.clone(), Mat::scalar(1, VLaurent::from_int(1)));
        let vi = Mat::scalar(1, VLaurent::vpow(-1));
        let inv = lam.inverse_with(&Loop::constant(vi.clone()), &Loop::one(&1)).unwrap();
        assert_eq!(inv, ZOp::split_diag(vi, Mat::scalar(1, VLaurent::from_int(1))));
        let sing = ZOp::identity(&1).sub(&ZOp::unit(0, 0, r(1)));
        assert_eq!(sing.inverse_uniform(&Loop::one(&1)), Err(Error::SingularFiniteBlock));
        assert!(matches!(z.inverse_uniform(&Loop::one(&1)), Err(Error::HintMismatch(_))));
    }

    #[test]
    fn reflections() {
        let z: ZOp<R> = ZOp::laurent_op(Loop::z(&1, 1));
        assert_eq!(z.conj_qhat(), ZOp::laurent_op(Loop::z(&1, -1)));
        assert_eq!(q_op().reflect_halves(), q_op().neg());
        let banded = ZOp::new(Loop::z(&1, 2), Loop::z(&1, 1).add(&Loop::z(&1, -3)), FMap::new());
        for x in [q_op().add(&ZOp::unit(3, -2, r(5))), banded] {
            assert_eq!(x.conj_qhat().conj_qhat(), x);
            assert_eq!(x.reflect_halves().reflect_halves(), x);
            for i in -6..6 {
                for j in -6..6 {
                    assert_eq!(x.conj_qhat().entry(i, j), x.entry(-i, -j));
                    assert_eq!(x.reflect_halves().entry(i, j), x.entry(-1 - i, -1 - j));
                }
            }
        }
    }
}
