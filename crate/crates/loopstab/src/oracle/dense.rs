use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::operators::{Toeplitz, ZOp};
use crate::scalar::{CirclePoint, CircleScalar, Mat, Rational, Ring, VLaurent};
use crate::toeplitz_contract::Block2;

/// Values for the formal variables of an expression.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub v: Option<Rational>,
    pub point: Option<CirclePoint>,
}

impl Bindings {
    pub fn none() -> Self {
        Bindings::default()
    }

    pub fn v(v: Rational) -> Self {
        Bindings { v: Some(v), point: None }
    }
}

/// Matrix coefficients that materialize to rational matrices.
pub trait Leaf: Ring {
    fn materialize(&self, b: &Bindings) -> Result<Mat<Rational>>;
}

impl Leaf for Mat<Rational> {
    fn materialize(&self, _: &Bindings) -> Result<Mat<Rational>> {
        Ok(self.clone())
    }
}

impl Leaf for Mat<VLaurent<Rational>> {
    fn materialize(&self, b: &Bindings) -> Result<Mat<Rational>> {
        let rows = self
            .rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| match (&b.v, x.as_constant()) {
                        (Some(v), _) => Ok(x.eval(v)),
                        (None, Some(c)) => Ok(c),
                        (None, None) => Err(Error::UnboundVariable("v".into())),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Ok(Mat::from_rows(rows))
    }
}

impl Leaf for Mat<CircleScalar> {
    fn materialize(&self, b: &Bindings) -> Result<Mat<Rational>> {
        let p = match &b.point {
            Some(p @ CirclePoint::Rational { .. }) => p,
            _ => return Err(Error::UnboundVariable("t, s".into())),
        };
        let rows = self.rows().iter().map(|r| r.iter().map(|x| x.eval(p)).collect()).collect::<Result<_>>()?;
        Ok(Mat::from_rows(rows))
    }
}

/// Structured operators that can be read entrywise on nested windows.
///
/// Level 0 is the outermost index; a leaf has no levels.
pub trait Dense: Ring {
    fn levels() -> usize;
    fn coeff_dim(&self) -> usize;
    /// Per level, the largest |i − j| of a nonzero entry.
    fn bands(&self) -> Vec<i64>;
    fn dense_entry(&self, row: &[i64], col: &[i64], b: &Bindings) -> Result<Mat<Rational>>;
}

impl<L: Leaf> Dense for L {
    fn levels() -> usize {
        0
    }
    fn coeff_dim(&self) -> usize {
        self.materialize(&Bindings::v(Rational::one())).map_or(0, |m| m.dim())
    }
    fn bands(&self) -> Vec<i64> {
        Vec::new()
    }
    fn dense_entry(&self, _: &[i64], _: &[i64], b: &Bindings) -> Result<Mat<Rational>> {
        self.materialize(b)
    }
}

fn merge_bands(acc: &mut Vec<i64>, b: Vec<i64>) {
    if acc.len() < b.len() {
        acc.resize(b.len(), 0);
    }
    for (a, x) in acc.iter_mut().zip(b) {
        *a = (*a).max(x);
    }
}

impl<E: Dense> Dense for ZOp<E> {
    fn levels() -> usize {
        E::levels() + 1
    }
    fn coeff_dim(&self) -> usize {
        self.entry(0, 0).coeff_dim()
    }
    fn bands(&self) -> Vec<i64> {
        let mut own = self.band().map_or(0, |(a, b)| a.abs().max(b.abs()));
        let mut inner = vec![0; E::levels()];
        for (&(i, j), x) in self.finite() {
            own = own.max((i - j).abs());
            merge_bands(&mut inner, x.bands());
        }
        for x in self.laurent().terms().values().chain(self.half().terms().values()) {
            merge_bands(&mut inner, x.bands());
        }
        let mut out = vec![own];
        out.extend(inner);
        out
    }
    fn dense_entry(&self, row: &[i64], col: &[i64], b: &Bindings) -> Result<Mat<Rational>> {
        self.entry(row[0], col[0]).dense_entry(&row[1..], &col[1..], b)
    }
}

impl<E: Dense> Dense for Toeplitz<E> {
    fn levels() -> usize {
        E::levels() + 1
    }
    fn coeff_dim(&self) -> usize {
        self.entry(0, 0).coeff_dim()
    }
    fn bands(&self) -> Vec<i64> {
        self.to_zop().bands()
    }
    fn dense_entry(&self, row: &[i64], col: &[i64], b: &Bindings) -> Result<Mat<Rational>> {
        if row[0] < 0 || col[0] < 0 {
            return Ok(Mat::zero(&self.coeff_dim()));
        }
        self.entry(row[0], col[0]).dense_entry(&row[1..], &col[1..], b)
    }
}

/// The {1,2} level is never truncated, so it carries band 0.
impl<E: Dense> Dense for Block2<E> {
    fn levels() -> usize {
        E::levels() + 1
    }
    fn coeff_dim(&self) -> usize {
        self.get(0, 0).coeff_dim()
    }
    fn bands(&self) -> Vec<i64> {
        let mut inner = vec![0; E::levels()];
        for i in 0..2 {
            for j in 0..2 {
                merge_bands(&mut inner, self.get(i, j).bands());
            }
        }
        let mut out = vec![0];
        out.extend(inner);
        out
    }
    fn dense_entry(&self, row: &[i64], col: &[i64], b: &Bindings) -> Result<Mat<Rational>> {
        self.get(row[0] as usize, col[0] as usize).dense_entry(&row[1..], &col[1..], b)
    }
}

/// Scalars the dense engine can run on.
pub trait DenseNum: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn abs_f64(&self) -> f64;
    fn to_csv(&self) -> String;
}

impl DenseNum for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Ring::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Ring::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Ring::sub(self, o)
    }
    fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }
    fn to_csv(&self) -> String {
        self.to_string()
    }
}

impl DenseNum for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn abs_f64(&self) -> f64 {
        self.abs()
    }
    fn to_csv(&self) -> String {
        format!("{self:e}")
    }
}

/// A truncated realization on nested windows [lo, hi) with the coefficient
/// matrices flattened innermost. Entries whose indices sit at least
/// `budget` inside every window agree with the exact operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseWindow<K> {
    pub windows: Vec<(i64, i64)>,
    pub d: usize,
    pub budget: Vec<i64>,
    pub band: Vec<i64>,
    pub entries: Vec<K>,
}

impl<K: DenseNum> DenseWindow<K> {
    pub fn size(&self) -> usize {
        self.windows.iter().map(|(lo, hi)| (hi - lo) as usize).product::<usize>() * self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.entries[i * self.size() + j]
    }

    /// Level indices and coefficient slot of a flat position.
    pub fn unflatten(&self, mut k: usize) -> (Vec<i64>, usize) {
        let c = k % self.d;
        k /= self.d;
        let mut idx = vec![0; self.windows.len()];
        for (l, (lo, hi)) in self.windows.iter().enumerate().rev() {
            let w = (hi - lo) as usize;
            idx[l] = lo + (k % w) as i64;
            k /= w;
        }
        (idx, c)
    }

    pub fn flatten(&self, idx: &[i64], c: usize) -> usize {
        let mut k = 0usize;
        for (x, (lo, hi)) in idx.iter().zip(&self.windows) {
            k = k * (hi - lo) as usize + (x - lo) as usize;
        }
        k * self.d + c
    }

    fn safe_at(&self, idx: &[i64]) -> bool {
        idx.iter().zip(&self.windows).zip(&self.budget).all(|((x, (lo, hi)), b)| lo + b <= *x && *x < hi - b)
    }

    /// Whether position k lies in the safe region.
    pub fn is_safe(&self, k: usize) -> bool {
        self.safe_at(&self.unflatten(k).0)
    }

    pub fn safe_count(&self) -> usize {
        (0..self.size()).filter(|&k| self.is_safe(k)).count()
    }

    pub fn identity(windows: Vec<(i64, i64)>, d: usize) -> Self {
        let n = windows.iter().map(|(lo, hi)| (hi - lo) as usize).product::<usize>() * d;
        let mut entries = vec![K::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = K::one();
        }
        let l = windows.len();
        DenseWindow { windows, d, budget: vec![0; l], band: vec![0; l], entries }
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.windows != o.windows || self.d != o.d {
            return Err(Error::WindowMismatch);
        }
        Ok(())
    }

    /// Safe-region entries agree with those of `o` (both budgets apply).
    pub fn agrees_with(&self, o: &Self) -> Result<bool> {
        Ok(self.max_diff(o)? == 0.0 && self.exact_diff_zero(o)?)
    }

    fn exact_diff_zero(&self, o: &Self) -> Result<bool> {
        self.compatible(o)?;
        let n = self.size();
        let budget: Vec<i64> = self.budget.iter().zip(&o.budget).map(|(a, b)| *a.max(b)).collect();
        let safe = |k: usize| {
            let (idx, _) = self.unflatten(k);
            idx.iter().zip(&self.windows).zip(&budget).all(|((x, (lo, hi)), b)| lo + b <= *x && *x < hi - b)
        };
        let rows: Vec<bool> = (0..n).map(safe).collect();
        Ok((0..n)
            .into_par_iter()
            .filter(|&i| rows[i])
            .all(|i| (0..n).filter(|&j| rows[j]).all(|j| self.entries[i * n + j] == o.entries[i * n + j])))
    }

    /// Largest |entry difference| over the common safe region.
    pub fn max_diff(&self, o: &Self) -> Result<f64> {
        self.compatible(o)?;
        let n = self.size();
        let budget: Vec<i64> = self.budget.iter().zip(&o.budget).map(|(a, b)| *a.max(b)).collect();
        let rows: Vec<bool> = (0..n)
            .map(|k| {
                let (idx, _) = self.unflatten(k);
                idx.iter().zip(&self.windows).zip(&budget).all(|((x, (lo, hi)), b)| lo + b <= *x && *x < hi - b)
            })
            .collect();
        Ok((0..n)
            .into_par_iter()
            .filter(|&i| rows[i])
            .map(|i| {
                (0..n)
                    .filter(|&j| rows[j])
                    .map(|j| self.entries[i * n + j].sub(&o.entries[i * n + j]).abs_f64())
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max))
    }

    pub fn map<L: DenseNum>(&self, f: impl Fn(&K) -> L + Sync + Send) -> DenseWindow<L> {
        DenseWindow {
            windows: self.windows.clone(),
            d: self.d,
            budget: self.budget.clone(),
            band: self.band.clone(),
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    /// One line per row, comma separated, preceded by a header of flat column labels.
    pub fn to_csv(&self) -> String {
        let n = self.size();
        let label = |k: usize| {
            let (idx, c) = self.unflatten(k);
            let parts: Vec<String> = idx.iter().map(|x| x.to_string()).collect();
            format!("{}:{c}", parts.join("."))
        };
        let mut out = String::from("row");
        for j in 0..n {
            out.push(',');
            out.push_str(&label(j));
        }
        out.push('\n');
        for i in 0..n {
            out.push_str(&label(i));
            for j in 0..n {
                out.push(',');
                out.push_str(&self.entries[i * n + j].to_csv());
            }
            out.push('\n');
        }
        out
    }
}

impl DenseWindow<Rational> {
    pub fn to_f64(&self) -> DenseWindow<f64> {
        self.map(|x| x.to_f64())
    }
}

/// Materialize `a` on the given windows, one per level, outermost first.
pub fn truncate<T: Dense>(a: &T, windows: &[(i64, i64)], b: &Bindings) -> Result<DenseWindow<Rational>> {
    if windows.len() != T::levels() || windows.iter().any(|(lo, hi)| lo >= hi) {
        return Err(Error::WindowMismatch);
    }
    let d = a.coeff_dim();
    let proto = DenseWindow::<Rational> {
        windows: windows.to_vec(),
        d,
        budget: vec![0; windows.len()],
        band: a.bands(),
        entries: Vec::new(),
    };
    let blocks = proto.size() / d;
    let idx: Vec<Vec<i64>> = (0..blocks).map(|k| proto.unflatten(k * d).0).collect();
    let rows: Vec<Vec<Mat<Rational>>> = idx
        .par_iter()
        .map(|r| idx.iter().map(|c| a.dense_entry(r, c, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let n = proto.size();
    let mut entries = vec![Rational::zero(); n * n];
    for (bi, row) in rows.iter().enumerate() {
        for (bj, m) in row.iter().enumerate() {
            for p in 0..d {
                for q in 0..d {
                    entries[(bi * d + p) * n + bj * d + q] = m.get(p, q).clone();
                }
            }
        }
    }
    Ok(DenseWindow { entries, ..proto })
}

/// Dense product; the budget grows by the larger band at every level.
pub fn dense_mul<K: DenseNum>(a: &DenseWindow<K>, b: &DenseWindow<K>) -> Result<DenseWindow<K>> {
    a.compatible(b)?;
    let n = a.size();
    let b_rows: Vec<Vec<(usize, &K)>> =
        (0..n).map(|k| (0..n).filter_map(|j| Some((j, &b.entries[k * n + j])).filter(|(_, x)| !x.is_zero())).collect()).collect();
    let entries: Vec<K> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut row = vec![K::zero(); n];
            for k in 0..n {
                let x = &a.entries[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for &(j, y) in &b_rows[k] {
                    row[j] = row[j].add(&x.mul(y));
                }
            }
            row
        })
        .collect();
    let budget = a.budget.iter().zip(&b.budget).zip(a.band.iter().zip(&b.band)).map(|((x, y), (p, q))| x + y + p.max(q)).collect();
    let band = a.band.iter().zip(&b.band).map(|(p, q)| p + q).collect();
    Ok(DenseWindow { windows: a.windows.clone(), d: a.d, budget, band, entries })
}

/// Product of several windows, left to right.
pub fn dense_chain<K: DenseNum>(parts: &[DenseWindow<K>]) -> Result<DenseWindow<K>> {
    let (first, rest) = parts.split_first().ok_or(Error::WindowMismatch)?;
    rest.iter().try_fold(first.clone(), |acc, x| dense_mul(&acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::Loop;
    use crate::operators::q_op;

    type R = Mat<Rational>;

    fn r(x: i64) -> R {
        Mat::scalar(1, Rational::from_int(x))
    }

    #[test]
    fn shift_and_q() {
        let u = ZOp::<R>::laurent_op(Loop::z(&1, 1));
        let w = truncate(&u, &[(-2, 2)], &Bindings::none()).unwrap();
        let n = w.size();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j + 1 { 1 } else { 0 };
                assert_eq!(*w.get(i, j), Rational::from_int(want));
            }
        }
        let q = truncate(&q_op::<R>(&1), &[(-2, 2)], &Bindings::none()).unwrap();
        let diag: Vec<Rational> = (0..4).map(|i| q.get(i, i).clone()).collect();
        assert_eq!(diag, [-1, -1, 1, 1].map(Rational::from_int));
        let ui = truncate(&ZOp::<R>::laurent_op(Loop::z(&1, -1)), &[(-2, 2)], &Bindings::none()).unwrap();
        let p = dense_mul(&w, &ui).unwrap();
        assert_eq!(p.budget, vec![1]);
        assert!(p.agrees_with(&DenseWindow::identity(vec![(-2, 2)], 1)).unwrap());
        assert!(!p.entries.iter().zip(&DenseWindow::<Rational>::identity(vec![(-2, 2)], 1).entries).all(|(a, b)| a == b));
    }

    #[test]
    fn errors() {
        let a = ZOp::<R>::laurent_op(Loop::z(&1, 1));
        assert_eq!(truncate(&a, &[(0, 2), (0, 2)], &Bindings::none()), Err(Error::WindowMismatch));
        let x = truncate(&a, &[(0, 3)], &Bindings::none()).unwrap();
        let y = truncate(&a, &[(0, 4)], &Bindings::none()).unwrap();
        assert_eq!(dense_mul(&x, &y), Err(Error::WindowMismatch));
        let v = crate::homotopies::lambda_vq::<Rational>(1, 1);
        assert_eq!(truncate(&v, &[(-2, 2)], &Bindings::none()), Err(Error::UnboundVariable("v".into())));
        assert!(truncate(&v, &[(0, 2)], &Bindings::v(Rational::from_int(3))).is_ok());
    }

    #[test]
    fn nested_and_block_levels() {
        let inner = ZOp::<R>::laurent_op(Loop::z(&1, 1)).add(&ZOp::unit(0, 0, r(2)));
        let outer = ZOp::split_diag(inner.clone(), ZOp::identity(&1));
        let w = truncate(&outer, &[(-2, 2), (-3, 3)], &Bindings::none()).unwrap();
        assert_eq!(w.band, vec![0, 1]);
        let sq = dense_mul(&w, &w).unwrap();
        let exact = truncate(&outer.mul(&outer), &[(-2, 2), (-3, 3)], &Bindings::none()).unwrap();
        assert!(sq.agrees_with(&exact).unwrap());
        let blk = Block2::diag(Toeplitz::w(Loop::z(&1, 1)), Toeplitz::<R>::identity(&1));
        let wb = truncate(&blk, &[(0, 2), (0, 5)], &Bindings::none()).unwrap();
        assert_eq!(wb.size(), 10);
    }
}
