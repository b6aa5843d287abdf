use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CirclePoint, Ring};

/// A group element carried as the pair (x, x⁻¹).
#[derive(Clone, Debug, PartialEq)]
pub struct Unit<T: Ring> {
    pub forward: T,
    pub inverse: T,
}

impl<T: Ring> Unit<T> {
    pub fn new(forward: T, inverse: T) -> Result<Self> {
        let u = Unit { forward, inverse };
        if !u.verify() {
            return Err(Error::NotInvertible("claimed inverse fails".into()));
        }
        Ok(u)
    }

    pub fn identity(ctx: &T::Ctx) -> Self {
        Unit { forward: T::one(ctx), inverse: T::one(ctx) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Unit { forward: self.forward.mul(&o.forward), inverse: o.inverse.mul(&self.inverse) }
    }

    pub fn inv(&self) -> Self {
        Unit { forward: self.inverse.clone(), inverse: self.forward.clone() }
    }

    pub fn verify(&self) -> bool {
        self.forward.mul(&self.inverse).is_one() && self.inverse.mul(&self.forward).is_one()
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&T) -> F) -> Unit<F> {
        Unit { forward: f(&self.forward), inverse: f(&self.inverse) }
    }
}

type Eval<T> = dyn Fn(&CirclePoint) -> Result<Unit<T>> + Send + Sync;

/// A family of units sampled at circle points, from `start` to `end`.
#[derive(Clone)]
pub struct HomotopyPath<T: Ring> {
    eval: Arc<Eval<T>>,
    pub start: CirclePoint,
    pub end: CirclePoint,
}

impl<T: Ring> fmt::Debug for HomotopyPath<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomotopyPath({} → {})", self.start.label(), self.end.label())
    }
}

impl<T: Ring + 'static> HomotopyPath<T> {
    pub fn new(f: impl Fn(&CirclePoint) -> Result<Unit<T>> + Send + Sync + 'static) -> Self {
        HomotopyPath { eval: Arc::new(f), start: CirclePoint::start(), end: CirclePoint::end() }
    }

    pub fn constant(u: Unit<T>) -> Self {
        Self::new(move |_| Ok(u.clone()))
    }

    pub fn at(&self, p: &CirclePoint) -> Result<Unit<T>> {
        (self.eval)(p)
    }

    pub fn at_start(&self) -> Result<Unit<T>> {
        self.at(&self.start)
    }

    pub fn at_end(&self) -> Result<Unit<T>> {
        self.at(&self.end)
    }

    /// h(p) = f(p)·f(end)⁻¹·g(p), a path from f(start) to g(end).
    pub fn concat(&self, g: &HomotopyPath<T>) -> Result<HomotopyPath<T>> {
        let f_end = self.at_end()?;
        if f_end != g.at_start()? {
            return Err(Error::EndpointMismatch);
        }
        let (f, g) = (self.clone(), g.clone());
        let mid = f_end.inv();
        Ok(HomotopyPath {
            eval: Arc::new(move |p| Ok(f.at(p)?.mul(&mid).mul(&g.at(p)?))),
            start: self.start.clone(),
            end: self.end.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{Loop, RMat};
    use crate::scalar::{pythagorean_grid, Mat, Rational};

    type L = Loop<RMat>;

    fn zpow(p: &CirclePoint) -> Result<Unit<L>> {
        // a path of monomial units c(p)·z with c(p) = 1 + t
        let (t, _) = p.ts().ok_or(Error::SymbolicPoint)?;
        let c = Mat::scalar(1, &Rational::one() + t);
        let ci = Mat::scalar(1, (&Rational::one() + t).recip().unwrap());
        Unit::new(Loop::monomial(1, c), Loop::monomial(-1, ci))
    }

    #[test]
    fn concat_endpoints_and_units() {
        let f = HomotopyPath::new(zpow);
        let g = HomotopyPath::constant(f.at_end().unwrap());
        let h = f.concat(&g).unwrap();
        for p in pythagorean_grid(5) {
            let x = h.at(&p).unwrap();
            assert!(x.verify());
            assert_eq!(x, f.at(&p).unwrap());
        }
        let k = HomotopyPath::constant(f.at_start().unwrap()).concat(&f).unwrap();
        assert_eq!(k.at_end().unwrap(), f.at_end().unwrap());
        let bad = HomotopyPath::constant(Unit::identity(&1));
        assert_eq!(f.concat(&bad).unwrap_err(), Error::EndpointMismatch);
    }
}
