use super::cyclic::{mixer, Loop};
use crate::error::{Error, Result};
use crate::scalar::{Adjoint, Mat, Rational, Ring};

pub type RMat = Mat<Rational>;
pub type RLoop = Loop<RMat>;

/// Building blocks of loop units, each with a known inverse.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    Constant { c: RMat, c_inv: RMat },
    Monomial { k: i64, c: RMat, c_inv: RMat },
    Mixer { power: i64, q: RMat },
    /// 1 + n(z) with n(z)^index = 0.
    Unipotent { n: RLoop, index: u32 },
}

impl Generator {
    pub fn dim(&self) -> usize {
        match self {
            Generator::Constant { c, .. } | Generator::Monomial { c, .. } => c.dim(),
            Generator::Mixer { q, .. } => q.dim(),
            Generator::Unipotent { n, .. } => *n.coeff_ctx(),
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            Generator::Constant { c, c_inv } | Generator::Monomial { c, c_inv, .. } => {
                if !c.mul(c_inv).is_one() || !c_inv.mul(c).is_one() {
                    return Err(Error::NotInvertible("constant and claimed inverse disagree".into()));
                }
            }
            Generator::Mixer { power, q } => {
                if power.abs() != 1 {
                    return Err(Error::NotInvertible(format!("mixer power {power}")));
                }
                if !q.mul(q).is_one() {
                    return Err(Error::BadInvolution);
                }
            }
            Generator::Unipotent { n, index } => {
                if !n.pow(*index).is_zero() {
                    return Err(Error::NotInvertible("nilpotency witness fails".into()));
                }
            }
        }
        Ok(())
    }

    pub fn forward(&self) -> RLoop {
        match self {
            Generator::Constant { c, .. } => Loop::constant(c.clone()),
            Generator::Monomial { k, c, .. } => Loop::monomial(*k, c.clone()),
            Generator::Mixer { power, q } => mixer(q, *power),
            Generator::Unipotent { n, .. } => Loop::one(n.coeff_ctx()).add(n),
        }
    }

    pub fn inverse_generator(&self) -> Generator {
        match self {
            Generator::Constant { c, c_inv } => Generator::Constant { c: c_inv.clone(), c_inv: c.clone() },
            Generator::Monomial { k, c, c_inv } => {
                Generator::Monomial { k: -k, c: c_inv.clone(), c_inv: c.clone() }
            }
            Generator::Mixer { power, q } => Generator::Mixer { power: -power, q: q.clone() },
            Generator::Unipotent { n, index } => {
                // (1+n)⁻¹ − 1 = Σ_{1≤j<index} (−n)^j, nilpotent of the same index
                let mn = n.neg();
                let mut acc = Loop::zero(n.coeff_ctx());
                let mut p = mn.clone();
                for _ in 1..*index {
                    acc = acc.add(&p);
                    p = p.mul(&mn);
                }
                Generator::Unipotent { n: acc, index: *index }
            }
        }
    }
}

/// Invertible loop with its exact inverse and the generator word that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopUnit {
    pub forward: RLoop,
    pub inverse: RLoop,
    pub provenance: Vec<Generator>,
}

impl LoopUnit {
    pub fn identity(d: usize) -> Self {
        LoopUnit { forward: Loop::one(&d), inverse: Loop::one(&d), provenance: Vec::new() }
    }

    /// Product of the generators in the given order.
    pub fn build(d: usize, spec: &[Generator]) -> Result<Self> {
        let mut u = LoopUnit::identity(d);
        for g in spec {
            if g.dim() != d {
                return Err(Error::NotInvertible(format!("generator of size {} in dimension {d}", g.dim())));
            }
            g.check()?;
            u.forward = u.forward.mul(&g.forward());
            u.inverse = g.inverse_generator().forward().mul(&u.inverse);
            u.provenance.push(g.clone());
        }
        debug_assert!(u.forward.mul(&u.inverse).is_one());
        Ok(u)
    }

    pub fn dim(&self) -> usize {
        *self.forward.coeff_ctx()
    }

    pub fn mul(&self, o: &LoopUnit) -> LoopUnit {
        let mut provenance = self.provenance.clone();
        provenance.extend(o.provenance.iter().cloned());
        LoopUnit {
            forward: self.forward.mul(&o.forward),
            inverse: o.inverse.mul(&self.inverse),
            provenance,
        }
    }

    pub fn inv(&self) -> LoopUnit {
        LoopUnit {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            provenance: self.provenance.iter().rev().map(Generator::inverse_generator).collect(),
        }
    }

    /// Both products with the inverse equal 1.
    pub fn verify(&self) -> bool {
        self.forward.mul(&self.inverse).is_one() && self.inverse.mul(&self.forward).is_one()
    }

    pub fn is_pointed(&self) -> bool {
        self.forward.eval_sign(1).is_one()
    }

    /// a·a(1)⁻¹.
    pub fn pointed(&self) -> LoopUnit {
        let c = self.forward.eval_sign(1);
        let c_inv = self.inverse.eval_sign(1);
        self.mul(&LoopUnit::build(self.dim(), &[Generator::Constant { c: c_inv, c_inv: c }]).unwrap())
    }

    /// z ↦ z⁻¹ on both loops.
    pub fn reflect(&self) -> LoopUnit {
        let provenance = self
            .provenance
            .iter()
            .map(|g| match g {
                Generator::Monomial { k, c, c_inv } => {
                    Generator::Monomial { k: -k, c: c.clone(), c_inv: c_inv.clone() }
                }
                Generator::Mixer { power, q } => Generator::Mixer { power: -power, q: q.clone() },
                Generator::Unipotent { n, index } => Generator::Unipotent { n: n.reflect(), index: *index },
                other => other.clone(),
            })
            .collect();
        LoopUnit { forward: self.forward.reflect(), inverse: self.inverse.reflect(), provenance }
    }

    pub fn is_unitary(&self) -> bool {
        self.forward.adjoint() == self.inverse
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixer_of_minus_one_is_z() {
        let q = Mat::scalar(1, -Rational::one());
        let u = LoopUnit::build(1, &[Generator::Mixer { power: 1, q }]).unwrap();
        assert_eq!(u.forward, Loop::z(&1, 1));
        assert_eq!(u.inverse, Loop::z(&1, -1));
    }

    #[test]
    fn two_noncommuting_mixers() {
        let q1 = Mat::from_ints(&[&[1, 0], &[0, -1]]);
        let q2 = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        let u = LoopUnit::build(
            2,
            &[Generator::Mixer { power: 1, q: q1 }, Generator::Mixer { power: 1, q: q2 }],
        )
        .unwrap();
        assert_eq!(u.forward.support(), Some((0, 2)));
        assert_eq!(u.inverse.support(), Some((-2, 0)));
        assert!(u.verify());
    }

    #[test]
    fn rejects_bad_generators() {
        let bad = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(
            LoopUnit::build(2, &[Generator::Mixer { power: 1, q: bad }]),
            Err(Error::BadInvolution)
        );
        let n = Loop::monomial(1, Mat::from_ints(&[&[1, 1], &[0, 0]]));
        assert!(matches!(
            LoopUnit::build(2, &[Generator::Unipotent { n, index: 2 }]),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn unipotent_and_pointing() {
        let n = Loop::monomial(1, Mat::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]))
            .add(&Loop::monomial(-1, Mat::from_ints(&[&[0, 0, 2], &[0, 0, 0], &[0, 0, 0]])));
        let c = Mat::from_ints(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let c_inv = c.try_inverse().unwrap();
        let u = LoopUnit::build(
            3,
            &[Generator::Unipotent { n, index: 3 }, Generator::Constant { c, c_inv }],
        )
        .unwrap();
        assert!(u.verify());
        assert!(!u.is_pointed());
        assert!(u.pointed().is_pointed());
        let w = u.inv();
        assert!(LoopUnit::build(3, &w.provenance).unwrap().forward == w.forward);
    }
}
