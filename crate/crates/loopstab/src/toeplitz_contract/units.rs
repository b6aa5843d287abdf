use crate::error::{Error, Result};
use crate::homotopies::{graded_conjugate, vsymbol, ShiftingRotation, Unit};
use crate::loops::{at_v, RMat};
use crate::operators::{FMap, Toeplitz};
use crate::scalar::{vlift, Mat, Ring, Scalar, VMat};

use super::lmap::l_unit;

/// Building blocks of Toeplitz units over d×d matrices, each with a known inverse.
#[derive(Clone, Debug, PartialEq)]
pub enum TGen {
    /// E(u) = 1 + (u − 1)e₀₀.
    Corner { u: RMat, u_inv: RMat },
    /// W(c) for a constant c.
    Constant { c: RMat, c_inv: RMat },
    /// 1 + L(q, u − 1), with symbol Λ(z,q)uΛ(z⁻¹,q).
    Twist { q: RMat, u: RMat, u_inv: RMat },
    /// 1 + n for a finite n with n^index = 0.
    Unipotent { n: FMap<RMat>, index: u32 },
}

impl TGen {
    pub fn dim(&self) -> usize {
        match self {
            TGen::Corner { u, .. } | TGen::Twist { u, .. } => u.dim(),
            TGen::Constant { c, .. } => c.dim(),
            TGen::Unipotent { n, .. } => n.values().next().map_or(0, Mat::dim),
        }
    }

    fn pair(&self, d: usize) -> Result<(Toeplitz<RMat>, Toeplitz<RMat>)> {
        let inv_ok = |a: &RMat, b: &RMat| a.mul(b).is_one() && b.mul(a).is_one();
        Ok(match self {
            TGen::Corner { u, u_inv } => {
                if !inv_ok(u, u_inv) {
                    return Err(Error::NotInvertible("corner and claimed inverse disagree".into()));
                }
                (Toeplitz::corner(u), Toeplitz::corner(u_inv))
            }
            TGen::Constant { c, c_inv } => {
                if !inv_ok(c, c_inv) {
                    return Err(Error::NotInvertible("constant and claimed inverse disagree".into()));
                }
                let w = |m: &RMat| Toeplitz::w(crate::loops::Loop::constant(m.clone()));
                (w(c), w(c_inv))
            }
            TGen::Twist { q, u, u_inv } => {
                if !q.mul(q).is_one() {
                    return Err(Error::BadInvolution);
                }
                if !inv_ok(u, u_inv) {
                    return Err(Error::NotInvertible("twist and claimed inverse disagree".into()));
                }
                (l_unit(q, u), l_unit(q, u_inv))
            }
            TGen::Unipotent { n, index } => {
                let n = Toeplitz::finite_op(&d, n.clone());
                if !n.pow(*index).is_zero() {
                    return Err(Error::NotInvertible("nilpotency witness fails".into()));
                }
                let mn = n.neg();
                let mut inv = Toeplitz::identity(&d);
                let mut p = mn.clone();
                for _ in 1..*index {
                    inv = inv.add(&p);
                    p = p.mul(&mn);
                }
                (Toeplitz::identity(&d).add(&n), inv)
            }
        })
    }
}

/// Invertible Toeplitz operator with its exact inverse and generator word.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzUnit {
    pub forward: Toeplitz<RMat>,
    pub inverse: Toeplitz<RMat>,
    pub provenance: Vec<TGen>,
}

impl ToeplitzUnit {
    pub fn build(d: usize, spec: &[TGen]) -> Result<Self> {
        let mut forward = Toeplitz::identity(&d);
        let mut inverse = Toeplitz::identity(&d);
        for g in spec {
            if g.dim() != d {
                return Err(Error::NotInvertible(format!("generator of size {} in dimension {d}", g.dim())));
            }
            let (f, i) = g.pair(d)?;
            forward = forward.mul(&f);
            inverse = i.mul(&inverse);
        }
        Ok(ToeplitzUnit { forward, inverse, provenance: spec.to_vec() })
    }

    pub fn dim(&self) -> usize {
        *self.forward.symbol().coeff_ctx()
    }

    pub fn unit(&self) -> Unit<Toeplitz<RMat>> {
        Unit { forward: self.forward.clone(), inverse: self.inverse.clone() }
    }

    pub fn lift<S: Scalar>(&self) -> Unit<Toeplitz<Mat<S>>> {
        let d = self.dim();
        self.unit().map(|t| t.map(&d, |m| m.lift()))
    }
}

/// T(A, θ, v) for a Toeplitz operator A.
pub fn toeplitz_homotopy<S: Scalar>(rot: &ShiftingRotation<S>, a: &Toeplitz<Mat<S>>) -> Toeplitz<VMat<S>> {
    graded_conjugate(rot, a)
}

fn at_one<S: Scalar>(t: &Toeplitz<VMat<S>>) -> Toeplitz<Mat<S>> {
    let one = S::scalar_one();
    t.map(&t.entry_ctx(), |m| m.map(|e| e.eval(&one)))
}

/// Z(A, θ, v) = T(A,θ,v)·T(A,θ,1)⁻¹ with T(A,θ,1)⁻¹ = T(A⁻¹,θ,1).
pub fn symbol_killer<S: Scalar>(rot: &ShiftingRotation<S>, a: &Unit<Toeplitz<Mat<S>>>) -> Toeplitz<VMat<S>> {
    let t1_inv = at_one(&graded_conjugate(rot, &a.inverse));
    let d = t1_inv.entry_ctx();
    toeplitz_homotopy(rot, &a.forward).mul(&t1_inv.map(&d, vlift))
}

/// E(σ(v)σ(1)⁻¹), the value of Z at θ = π/2.
pub fn killer_end_display<S: Scalar>(a: &Unit<Toeplitz<Mat<S>>>) -> Toeplitz<VMat<S>> {
    let c = vlift(&a.inverse.symbol().eval_sign(1));
    Toeplitz::corner(&at_v(a.forward.symbol(), 1).mul(&c))
}

/// The symbol of T(A, θ, v) does not depend on θ.
pub fn symbol_invariant<S: Scalar>(rot: &ShiftingRotation<S>, a: &Toeplitz<Mat<S>>) -> bool {
    *toeplitz_homotopy(rot, a).symbol() == vsymbol(a.symbol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::Variant;
    use crate::loops::Loop;
    use crate::scalar::{CirclePoint, CircleScalar, Rational, VLaurent};

    fn rm(r: &[&[i64]]) -> RMat {
        Mat::from_ints(r)
    }

    fn sample() -> ToeplitzUnit {
        let u = rm(&[&[2, 1], &[1, 1]]);
        let u_inv = u.try_inverse().unwrap();
        let n = FMap::from([((0, 1), rm(&[&[0, 1], &[0, 0]])), ((1, 1), rm(&[&[0, 0], &[0, 0]]))]);
        ToeplitzUnit::build(
            2,
            &[
                TGen::Twist { q: rm(&[&[1, 2], &[0, -1]]), u: u.clone(), u_inv: u_inv.clone() },
                TGen::Corner { u: u_inv.clone(), u_inv: u.clone() },
                TGen::Unipotent { n, index: 2 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn builder_inverse() {
        let a = sample();
        assert!(a.unit().verify());
        assert_eq!(a.forward.symbol().support(), Some((-1, 1)));
    }

    #[test]
    fn homotopy_of_shift_at_end() {
        // T(W(z), π/2) = v·e₀₀ + W(z)(1 − e₀₀)
        let rot = ShiftingRotation::<Rational>::at(&CirclePoint::end(), Variant::Unitary).unwrap();
        let w = Toeplitz::w(Loop::z(&1, 1));
        let got = toeplitz_homotopy(&rot, &w);
        let v = Mat::scalar(1, VLaurent::vpow(1));
        let wv = Toeplitz::w(Loop::z(&1, 1));
        let e00 = Toeplitz::unit(0, 0, VMat::<Rational>::one(&1));
        let want = Toeplitz::unit(0, 0, v).add(&wv.mul(&Toeplitz::identity(&1).sub(&e00)));
        assert_eq!(got, want);
    }

    #[test]
    fn killer_endpoints() {
        let a = sample().lift::<CircleScalar>();
        let start = ShiftingRotation::<CircleScalar>::at(&CirclePoint::start(), Variant::Unitary);
        assert!(symbol_killer(&start, &a).is_one());
        let end = ShiftingRotation::<CircleScalar>::at(&CirclePoint::end(), Variant::Unitary);
        assert_eq!(symbol_killer(&end, &a), killer_end_display(&a));
        let mid = ShiftingRotation::<CircleScalar>::at(&CirclePoint::Symbolic, Variant::Unitary);
        assert!(symbol_invariant(&mid, &a.forward));
        assert!(symbol_killer(&mid, &a).symbol().is_one());
    }
}
