use std::collections::BTreeMap;

use super::rotation::ShiftingRotation;
use crate::error::{Error, Result};
use crate::loops::{at_v, Loop};
use crate::operators::{FMap, Idx, Toeplitz};
use crate::scalar::{Mat, Ring, Scalar, VLaurent, VMat};

pub(crate) fn put<E: Ring>(m: &mut FMap<E>, key: (i64, i64), x: E) {
    if x.is_zero() {
        return;
    }
    let e = m.entry(key).or_insert_with(|| x.zero_like());
    *e = e.add(&x);
    if e.is_zero() {
        m.remove(&key);
    }
}

/// c·x·vᵏ as a matrix over the v-ring.
pub(crate) fn vmono<S: Scalar>(c: &Mat<S>, x: &S, k: i64) -> VMat<S> {
    c.map(|e| VLaurent::monomial(k, e.mul(x)))
}

/// T_K(A, θ) = R·A·R′ for A = W(a) + F on ℕ.
pub fn rot_conjugate<S: Scalar>(rot: &ShiftingRotation<S>, a: &Toeplitz<Mat<S>>) -> Toeplitz<Mat<S>> {
    let mut fin = BTreeMap::new();
    for (&n, c) in a.symbol().terms() {
        for (k, x) in rot.w_correction(n) {
            put(&mut fin, k, c.scale(&x));
        }
    }
    for (&(n, m), f) in a.finite() {
        let row = rot.row(m);
        for (i, x) in rot.column(n) {
            for (j, y) in &row {
                put(&mut fin, (i, j.to_owned()), f.scale(&x.mul(y)));
            }
        }
    }
    Toeplitz::new(a.symbol().clone(), fin)
}

/// T(A, θ, v) = δ₊σ(v)e₀₀ + δ₋σ(−v)e₀₀ + V⁻¹R·VAV⁻¹·R′V, where V = Σ vⁿe_{n,n}.
pub fn graded_conjugate<S: Scalar>(rot: &ShiftingRotation<S>, a: &Toeplitz<Mat<S>>) -> Toeplitz<VMat<S>> {
    let d = *a.symbol().coeff_ctx();
    let mut fin: FMap<VMat<S>> = BTreeMap::new();
    for (&n, c) in a.symbol().terms() {
        for ((i, j), x) in rot.w_correction(n) {
            put(&mut fin, (i, j), vmono(c, &x, n + j - i));
        }
    }
    for (&(n, m), f) in a.finite() {
        let row = rot.row(m);
        for (i, x) in rot.column(n) {
            for (j, y) in &row {
                put(&mut fin, (i, *j), vmono(f, &x.mul(y), n - m + j - i));
            }
        }
    }
    if rot.delta_plus() {
        put(&mut fin, (0, 0), at_v(a.symbol(), 1));
    }
    if rot.delta_minus() {
        put(&mut fin, (0, 0), at_v(a.symbol(), -1));
    }
    let symbol = a.symbol().map(&d, |c| c.map(|e| VLaurent::constant(e.clone())));
    Toeplitz::new(symbol, fin)
}

/// Entry (k, l) of R′·X·R, a finite sum since rows of R′ and columns of R are finite.
pub fn recover_entry<S: Scalar>(rot: &ShiftingRotation<S>, x: &Toeplitz<Mat<S>>, k: i64, l: i64) -> Mat<S> {
    let mut acc = x.entry(0, 0).zero_like();
    let col = rot.column(l);
    for (i, a) in rot.row(k) {
        for (j, b) in &col {
            let e = x.entry(i, *j);
            if !e.is_zero() {
                acc = acc.add(&e.scale(&a.mul(b)));
            }
        }
    }
    acc
}

/// T̂_K on finite matrices over ℕ×ℕ: the rotation acts on the first coordinate.
/// At θ = 0 this is the identity and at θ = π/2 the relabeling (n, m) ↦ (n+1, m).
pub fn stabilize<S: Scalar>(
    rot: &ShiftingRotation<S>,
    a: &BTreeMap<(Idx, Idx), Mat<S>>,
) -> Result<BTreeMap<(Idx, Idx), Mat<S>>> {
    let mut out: BTreeMap<(Idx, Idx), Mat<S>> = BTreeMap::new();
    for (&(p, q), f) in a {
        let ((n, m), (n2, m2)) = match (p, q) {
            (Idx::NN(n, m), Idx::NN(n2, m2)) if n >= 0 && m >= 0 && n2 >= 0 && m2 >= 0 => ((n, m), (n2, m2)),
            _ => return Err(Error::BadPartition(format!("{p:?}, {q:?} outside ℕ×ℕ"))),
        };
        let row = rot.row(n2);
        for (i, x) in rot.column(n) {
            for (j, y) in &row {
                let key = (Idx::NN(i, m), Idx::NN(*j, m2));
                let v = f.scale(&x.mul(y));
                let e = out.entry(key).or_insert_with(|| v.zero_like());
                *e = e.add(&v);
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    Ok(out)
}

/// Symbol lifted into the v-ring as constants.
pub fn vsymbol<S: Scalar>(a: &Loop<Mat<S>>) -> Loop<VMat<S>> {
    a.map(a.coeff_ctx(), |c| c.map(|e| VLaurent::constant(e.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::rotation::Variant;
    use crate::scalar::{CirclePoint, CircleScalar, Rational};

    type M = Mat<CircleScalar>;

    fn e00() -> Toeplitz<M> {
        Toeplitz::unit(0, 0, Mat::scalar(1, CircleScalar::one(&())))
    }

    #[test]
    fn rank_one_outer_product() {
        let rot = ShiftingRotation::<CircleScalar>::at(&CirclePoint::Symbolic, Variant::Unitary);
        let out = rot_conjugate(&rot, &e00());
        let (t, s) = (CircleScalar::t(), CircleScalar::s());
        let m = |x: CircleScalar| Mat::scalar(1, x);
        assert_eq!(out.entry(0, 0), m(s.mul(&s)));
        assert_eq!(out.entry(0, 1), m(t.mul(&s).neg()));
        assert_eq!(out.entry(1, 0), m(t.mul(&s).neg()));
        assert_eq!(out.entry(1, 1), m(t.mul(&t)));
        assert_eq!(out.finite().len(), 4);
    }

    #[test]
    fn endpoints() {
        let a = Toeplitz::w(Loop::z(&1, 1)).add(&e00().scale_q(&Rational::from_int(3)));
        let start = ShiftingRotation::<CircleScalar>::at(&CirclePoint::start(), Variant::Unitary);
        assert_eq!(rot_conjugate(&start, &a), a);
        let end = ShiftingRotation::<CircleScalar>::at(&CirclePoint::end(), Variant::Unitary);
        let w = Toeplitz::w(Loop::z(&1, 1));
        let wi = Toeplitz::w(Loop::z(&1, -1));
        assert_eq!(rot_conjugate(&end, &a), w.mul(&a).mul(&wi));
    }

    #[test]
    fn stabilize_endpoint_relabels() {
        let rot = ShiftingRotation::<Rational>::at(&CirclePoint::end(), Variant::Unitary).unwrap();
        let one = Mat::scalar(1, Rational::one());
        let a = BTreeMap::from([((Idx::NN(0, 0), Idx::NN(0, 2)), one.clone())]);
        let out = stabilize(&rot, &a).unwrap();
        assert_eq!(out, BTreeMap::from([((Idx::NN(1, 0), Idx::NN(1, 2)), one)]));
    }
}
