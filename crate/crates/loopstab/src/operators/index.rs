use std::collections::BTreeMap;

use super::zop::FMap;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Concrete index sets and their standard bijections to ℤ or ℕ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Z,
    N,
    /// {1,2}×ℤ, (c, n) ↦ 2n + c − 1.
    PairZ,
    /// ℕ×ℕ, Cantor pairing to ℕ.
    ProductNN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idx {
    Z(i64),
    N(i64),
    Pair(u8, i64),
    NN(i64, i64),
}

pub fn cantor(n: i64, m: i64) -> i64 {
    (n + m) * (n + m + 1) / 2 + m
}

pub fn cantor_inv(k: i64) -> (i64, i64) {
    let mut w = ((((8 * k + 1) as f64).sqrt() - 1.0) / 2.0) as i64;
    while w * (w + 1) / 2 > k {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= k {
        w += 1;
    }
    let m = k - w * (w + 1) / 2;
    (w - m, m)
}

impl IndexSet {
    pub fn contains(&self, i: &Idx) -> bool {
        matches!(
            (self, i),
            (IndexSet::Z, Idx::Z(_))
                | (IndexSet::N, Idx::N(_))
                | (IndexSet::PairZ, Idx::Pair(1 | 2, _))
        ) || matches!((self, i), (IndexSet::N, Idx::N(n)) if *n >= 0)
            || matches!((self, i), (IndexSet::ProductNN, Idx::NN(n, m)) if *n >= 0 && *m >= 0)
    }

    /// Position in ℤ (for Z, PairZ) or ℕ (for N, ProductNN).
    pub fn linear(&self, i: &Idx) -> Result<i64> {
        match (self, i) {
            (IndexSet::Z, Idx::Z(n)) => Ok(*n),
            (IndexSet::N, Idx::N(n)) if *n >= 0 => Ok(*n),
            (IndexSet::PairZ, Idx::Pair(c @ (1 | 2), n)) => Ok(2 * n + *c as i64 - 1),
            (IndexSet::ProductNN, Idx::NN(n, m)) if *n >= 0 && *m >= 0 => Ok(cantor(*n, *m)),
            _ => Err(Error::NotBijective(format!("{i:?} not in {self:?}"))),
        }
    }

    pub fn from_linear(&self, k: i64) -> Result<Idx> {
        match self {
            IndexSet::Z => Ok(Idx::Z(k)),
            IndexSet::N if k >= 0 => Ok(Idx::N(k)),
            IndexSet::PairZ => Ok(Idx::Pair((k.rem_euclid(2) + 1) as u8, k.div_euclid(2))),
            IndexSet::ProductNN if k >= 0 => {
                let (n, m) = cantor_inv(k);
                Ok(Idx::NN(n, m))
            }
            _ => Err(Error::NotBijective(format!("{k} outside {self:?}"))),
        }
    }
}

/// r_ω: entry (ω(i), ω(j)) of the output is entry (i, j) of the input.
/// ω must be injective on the indices that occur.
pub fn relabel<E: Ring, I: Ord + Copy + std::fmt::Debug, J: Ord + Copy>(
    a: &BTreeMap<(I, I), E>,
    omega: impl Fn(I) -> Result<J>,
) -> Result<BTreeMap<(J, J), E>> {
    let mut seen: BTreeMap<J, I> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (&(i, j), x) in a {
        let (oi, oj) = (omega(i)?, omega(j)?);
        for (src, dst) in [(i, oi), (j, oj)] {
            if let Some(prev) = seen.insert(dst, src) {
                if prev != src {
                    return Err(Error::NotBijective(format!("{prev:?} and {src:?} collide")));
                }
            }
        }
        out.insert((oi, oj), x.clone());
    }
    Ok(out)
}

/// ℕ-indexed finite matrix viewed on ℕ×ℕ through the Cantor pairing.
pub fn unpair<E: Ring>(a: &FMap<E>) -> Result<BTreeMap<(Idx, Idx), E>> {
    relabel(a, |k: i64| IndexSet::ProductNN.from_linear(k))
}

pub fn pair<E: Ring>(a: &BTreeMap<(Idx, Idx), E>) -> Result<FMap<E>> {
    relabel(a, |i: Idx| IndexSet::ProductNN.linear(&i))
}

/// ω((n, m)) = (n + 1, m).
pub fn shift_first(i: Idx) -> Result<Idx> {
    match i {
        Idx::NN(n, m) => Ok(Idx::NN(n + 1, m)),
        other => Err(Error::NotBijective(format!("{other:?} is not in ℕ×ℕ"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Mat, Rational};

    #[test]
    fn cantor_round_trip() {
        for k in 0..500 {
            let (n, m) = cantor_inv(k);
            assert_eq!(cantor(n, m), k);
        }
        for k in -20..20 {
            let i = IndexSet::PairZ.from_linear(k).unwrap();
            assert_eq!(IndexSet::PairZ.linear(&i).unwrap(), k);
        }
    }

    #[test]
    fn relabel_laws() {
        let one = Mat::scalar(1, Rational::one());
        let a: FMap<Mat<Rational>> = [((0, 0), one.clone()), ((3, 7), one.clone())].into_iter().collect();
        assert_eq!(relabel(&a, Ok).unwrap(), a);
        assert_eq!(pair(&unpair(&a).unwrap()).unwrap(), a);
        let e: BTreeMap<(Idx, Idx), _> = [((Idx::NN(0, 0), Idx::NN(0, 0)), one.clone())].into_iter().collect();
        let s = relabel(&e, shift_first).unwrap();
        assert_eq!(s.keys().next(), Some(&(Idx::NN(1, 0), Idx::NN(1, 0))));
        // composition: shifting twice equals the composite map
        let twice = relabel(&s, shift_first).unwrap();
        let comp = relabel(&e, |i| shift_first(shift_first(i)?)).unwrap();
        assert_eq!(twice, comp);
        assert!(relabel(&a, |_| Ok(0)).is_err());
    }
}
