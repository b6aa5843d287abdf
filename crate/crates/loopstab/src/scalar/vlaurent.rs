use std::collections::BTreeMap;
use std::fmt;

use super::ring::{Ring, Scalar};
use super::Rational;

/// Laurent polynomial in the formal variable v.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VLaurent<K> {
    terms: BTreeMap<i64, K>,
}

impl<K: Scalar> VLaurent<K> {
    pub fn constant(c: K) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: i64, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        VLaurent { terms }
    }

    /// v^k.
    pub fn vpow(k: i64) -> Self {
        Self::monomial(k, K::scalar_one())
    }

    pub fn terms(&self) -> &BTreeMap<i64, K> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> K {
        self.terms.get(&k).cloned().unwrap_or_else(K::scalar_zero)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, K)>) -> Self {
        let mut out = VLaurent { terms: BTreeMap::new() };
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: &K) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(K::scalar_zero);
        *e = e.add(c);
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Constant term when the element does not involve v.
    pub fn as_constant(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::scalar_zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Substitute v ↦ w.
    pub fn eval(&self, w: &K) -> K {
        let wi = w.try_inv();
        let mut acc = K::scalar_zero();
        for (&k, c) in &self.terms {
            let p = if k >= 0 {
                w.pow(k as u32)
            } else {
                wi.as_ref().expect("negative power of a non-unit").pow((-k) as u32)
            };
            acc = acc.add(&c.mul(&p));
        }
        acc
    }

    /// Substitute v ↦ ±1 and keep the result as a constant of the same ring.
    pub fn at_sign(&self, sign: i64) -> Self {
        Self::constant(self.eval(&K::from_int(sign)))
    }

    /// v ↦ v⁻¹.
    pub fn invert_var(&self) -> Self {
        VLaurent { terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect() }
    }

    pub fn map<L: Scalar>(&self, f: impl Fn(&K) -> L) -> VLaurent<L> {
        VLaurent::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }
}

impl<K: Scalar + fmt::Debug> fmt::Debug for VLaurent<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| if *k == 0 { format!("{c:?}") } else { format!("({c:?})v^{k}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<K: Scalar> Ring for VLaurent<K> {
    type Ctx = ();
    fn ctx(&self) {}
    fn zero(_: &()) -> Self {
        VLaurent { terms: BTreeMap::new() }
    }
    fn one(_: &()) -> Self {
        Self::constant(K::scalar_one())
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
        VLaurent { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }
    fn scale_q(&self, q: &Rational) -> Self {
        VLaurent::from_terms(self.terms.iter().map(|(k, c)| (*k, c.scale_q(q))))
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(&());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, &x.mul(y));
            }
        }
        out
    }
}

impl<K: Scalar> Scalar for VLaurent<K> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(K::from_rational(q))
    }

    /// Only monomials with invertible coefficient are units.
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next().unwrap();
        Some(Self::monomial(-k, c.try_inv()?))
    }

    /// v is treated as unitary: v* = v⁻¹.
    fn conj(&self) -> Self {
        VLaurent { terms: self.terms.iter().map(|(k, c)| (-k, c.conj())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_units() {
        let v: VLaurent<Rational> = VLaurent::vpow(1);
        let two_v = v.mul(&VLaurent::from_int(2));
        assert!(two_v.mul(&two_v.try_inv().unwrap()).is_one());
        assert!(v.add(&VLaurent::from_int(1)).try_inv().is_none());
    }

    #[test]
    fn evaluation() {
        let x = VLaurent::from_terms([(-1, Rational::from_int(3)), (2, Rational::from_int(1))]);
        assert_eq!(x.eval(&Rational::from_int(-1)), Rational::from_int(-2));
        assert_eq!(x.eval(&Rational::from_int(2)), Rational::new(11, 2));
        assert_eq!(x.conj().invert_var(), x);
    }
}
