use std::collections::BTreeMap;

use super::toeplitz::Toeplitz;
use super::zop::{fmap_insert, FMap, ZOp};
use crate::loops::Loop;
use crate::scalar::Ring;

/// The four ℕ×ℕ blocks of a ℤ×ℤ operator, with n ↦ −1−n on the negative half.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockView<E: Ring> {
    pub mm: Toeplitz<E>,
    pub mp: FMap<E>,
    pub pm: FMap<E>,
    pub pp: Toeplitz<E>,
}

fn rel(i: i64) -> i64 {
    -1 - i
}

impl<E: Ring> BlockView<E> {
    pub fn of(a: &ZOp<E>) -> Self {
        let l = a.laurent();
        let mut mm = BTreeMap::new();
        let mut pp = BTreeMap::new();
        let mut mp = BTreeMap::new();
        let mut pm = BTreeMap::new();
        for (&(i, j), x) in a.finite() {
            match (i < 0, j < 0) {
                (true, true) => fmap_insert(&mut mm, (rel(i), rel(j)), x),
                (false, false) => fmap_insert(&mut pp, (i, j), x),
                (true, false) => fmap_insert(&mut mp, (rel(i), j), x),
                (false, true) => fmap_insert(&mut pm, (i, rel(j)), x),
            }
        }
        for (&n, c) in l.terms() {
            // i − j = n with i < 0 ≤ j, or j < 0 ≤ i
            if n < 0 {
                for i in n..0 {
                    fmap_insert(&mut mp, (rel(i), i - n), c);
                }
            } else {
                for i in 0..n {
                    fmap_insert(&mut pm, (i, rel(i - n)), c);
                }
            }
        }
        BlockView {
            mm: Toeplitz::new(l.reflect(), mm),
            mp,
            pm,
            pp: Toeplitz::new(a.symbol_plus(), pp),
        }
    }

    pub fn assemble(&self) -> ZOp<E> {
        let l = self.mm.symbol().reflect();
        let half = self.pp.symbol().sub(&l);
        let mut finite = BTreeMap::new();
        for (&(p, q), x) in self.mm.finite() {
            fmap_insert(&mut finite, (rel(p), rel(q)), x);
        }
        for (k, x) in self.pp.finite() {
            fmap_insert(&mut finite, *k, x);
        }
        for (&(p, q), x) in &self.mp {
            fmap_insert(&mut finite, (rel(p), q), x);
        }
        for (&(p, q), x) in &self.pm {
            fmap_insert(&mut finite, (p, rel(q)), x);
        }
        let lz = ZOp::laurent_op(l.clone());
        let off = BlockView::of(&lz);
        for (&(p, q), x) in &off.mp {
            fmap_insert(&mut finite, (rel(p), q), &x.neg());
        }
        for (&(p, q), x) in &off.pm {
            fmap_insert(&mut finite, (p, rel(q)), &x.neg());
        }
        ZOp::new(l, half, finite)
    }
}

/// Y(a) on ℕ×ℕ: (p, q) ↦ a_{−1−p−q}.
pub fn hankel_y<E: Ring>(a: &Loop<E>) -> FMap<E> {
    Toeplitz::hankel_mp(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Mat, Rational};

    type R = Mat<Rational>;

    fn r(x: i64) -> R {
        Mat::scalar(1, Rational::from_int(x))
    }

    #[test]
    fn laurent_blocks_are_w_and_y() {
        let a: Loop<R> = Loop::from_terms(&1, [(-2, r(3)), (0, r(1)), (1, r(2)), (3, r(-1))]);
        let bv = BlockView::of(&ZOp::laurent_op(a.clone()));
        assert_eq!(bv.pp, Toeplitz::w(a.clone()));
        assert_eq!(bv.mm, Toeplitz::w(a.reflect()));
        assert_eq!(bv.mp, hankel_y(&a));
        assert_eq!(bv.pm, hankel_y(&a.reflect()));
        assert_eq!(bv.assemble(), ZOp::laurent_op(a));
    }

    #[test]
    fn shift_and_q() {
        let bv = BlockView::of(&ZOp::laurent_op(Loop::<R>::z(&1, 1)));
        assert!(bv.mp.is_empty());
        assert_eq!(bv.pp, Toeplitz::w(Loop::z(&1, 1)));
        let q = ZOp::split_diag(r(-1), r(1));
        let bv = BlockView::of(&q);
        assert_eq!(bv.mm, Toeplitz::identity(&1).neg());
        assert!(bv.pp.is_one() && bv.mp.is_empty() && bv.pm.is_empty());
        assert_eq!(bv.assemble(), q);
    }
}
