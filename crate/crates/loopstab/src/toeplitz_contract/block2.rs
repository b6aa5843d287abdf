use std::fmt;

use crate::scalar::{Rational, Ring};

/// 2×2 matrix over a ring; used for operators on {1,2}×I.
#[derive(Clone, PartialEq)]
pub struct Block2<E: Ring> {
    pub b: [[E; 2]; 2],
}

impl<E: Ring> Block2<E> {
    pub fn new(b00: E, b01: E, b10: E, b11: E) -> Self {
        Block2 { b: [[b00, b01], [b10, b11]] }
    }

    pub fn diag(x: E, y: E) -> Self {
        let z = x.zero_like();
        Self::new(x, z.clone(), z, y)
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.b[i][j]
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> Block2<F> {
        let [[a, b], [c, d]] = &self.b;
        Block2::new(f(a), f(b), f(c), f(d))
    }

    fn zip(&self, o: &Self, f: impl Fn(&E, &E) -> E) -> Self {
        Block2::new(
            f(&self.b[0][0], &o.b[0][0]),
            f(&self.b[0][1], &o.b[0][1]),
            f(&self.b[1][0], &o.b[1][0]),
            f(&self.b[1][1], &o.b[1][1]),
        )
    }
}

impl<E: Ring> fmt::Debug for Block2<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.b.iter()).finish()
    }
}

impl<E: Ring> Ring for Block2<E> {
    type Ctx = E::Ctx;

    fn ctx(&self) -> E::Ctx {
        self.b[0][0].ctx()
    }
    fn zero(ctx: &E::Ctx) -> Self {
        Block2::diag(E::zero(ctx), E::zero(ctx))
    }
    fn one(ctx: &E::Ctx) -> Self {
        Block2::diag(E::one(ctx), E::one(ctx))
    }
    fn is_zero(&self) -> bool {
        self.b.iter().flatten().all(Ring::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        self.zip(o, |x, y| x.add(y))
    }
    fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }
    fn scale_q(&self, q: &Rational) -> Self {
        self.map(|x| x.scale_q(q))
    }
    fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.b[i][0].mul(&o.b[0][j]).add(&self.b[i][1].mul(&o.b[1][j]));
        Block2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}
