use std::fmt;

use super::ring::{Adjoint, Ring, Scalar};
use super::Rational;

/// Dense d×d matrix over a commutative scalar ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<K> {
    d: usize,
    data: Vec<K>,
}

impl<K: Scalar> Mat<K> {
    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> K) -> Self {
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(f(i, j));
            }
        }
        Mat { d, data }
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let d = rows.len();
        assert!(rows.iter().all(|r| r.len() == d), "matrix must be square");
        Mat { d, data: rows.into_iter().flatten().collect() }
    }

    pub fn scalar(d: usize, c: K) -> Self {
        Self::from_fn(d, |i, j| if i == j { c.clone() } else { K::scalar_zero() })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: K) {
        self.data[i * self.d + j] = x;
    }

    pub fn entries(&self) -> &[K] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<K>> {
        self.data.chunks(self.d).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.d, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &K) -> Self {
        Mat { d: self.d, data: self.data.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> Mat<L> {
        Mat { d: self.d, data: self.data.iter().map(f).collect() }
    }

    /// Two-sided inverse by Gauss–Jordan, requiring unit pivots.
    pub fn try_inverse(&self) -> Option<Self> {
        let d = self.d;
        let mut a = self.rows();
        let mut b = Self::one(&d).rows();
        for col in 0..d {
            let (piv, inv) = (col..d).find_map(|r| a[r][col].try_inv().map(|x| (r, x)))?;
            a.swap(col, piv);
            b.swap(col, piv);
            for j in 0..d {
                a[col][j] = a[col][j].mul(&inv);
                b[col][j] = b[col][j].mul(&inv);
            }
            for r in 0..d {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..d {
                    let x = a[col][j].mul(&f);
                    a[r][j] = a[r][j].sub(&x);
                    let y = b[col][j].mul(&f);
                    b[r][j] = b[r][j].sub(&y);
                }
            }
        }
        let inv = Self::from_rows(b);
        (self.mul(&inv).is_one() && inv.mul(self).is_one()).then_some(inv)
    }
}

impl Mat<Rational> {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect(),
        )
    }

    pub fn lift<K: Scalar>(&self) -> Mat<K> {
        self.map(K::from_rational)
    }
}

impl<K: Scalar> fmt::Debug for Mat<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            return write!(f, "{:?}", self.data[0]);
        }
        f.debug_list().entries(self.data.chunks(self.d)).finish()
    }
}

impl<K: Scalar> Ring for Mat<K> {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.d
    }
    fn zero(d: &usize) -> Self {
        Mat { d: *d, data: vec![K::scalar_zero(); d * d] }
    }
    fn one(d: &usize) -> Self {
        Self::scalar(*d, K::scalar_one())
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        Mat { d: self.d, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }
    fn neg(&self) -> Self {
        Mat { d: self.d, data: self.data.iter().map(|a| a.neg()).collect() }
    }
    fn scale_q(&self, q: &Rational) -> Self {
        Mat { d: self.d, data: self.data.iter().map(|x| x.scale_q(q)).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Mat { d: self.d, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.d, o.d);
        let d = self.d;
        if d == 1 {
            return Mat { d, data: vec![self.data[0].mul(&o.data[0])] };
        }
        let mut data = vec![K::scalar_zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &o.data[k * d + j];
                    if !b.is_zero() {
                        data[i * d + j] = data[i * d + j].add(&a.mul(b));
                    }
                }
            }
        }
        Mat { d, data }
    }
}

impl<K: Scalar> Adjoint for Mat<K> {
    fn adjoint(&self) -> Self {
        Self::from_fn(self.d, |i, j| self.get(j, i).conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noncommutative_witness() {
        let x = Mat::from_ints(&[&[1, 0], &[0, -1]]);
        let y = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_ne!(x.mul(&y), y.mul(&x));
        assert!(x.mul(&x).is_one() && y.mul(&y).is_one());
    }

    #[test]
    fn inverse() {
        let a = Mat::from_ints(&[&[2, 1], &[1, 1]]);
        let b = a.try_inverse().unwrap();
        assert_eq!(b, Mat::from_ints(&[&[1, -1], &[-1, 2]]));
        assert!(Mat::from_ints(&[&[1, 2], &[2, 4]]).try_inverse().is_none());
    }
}
