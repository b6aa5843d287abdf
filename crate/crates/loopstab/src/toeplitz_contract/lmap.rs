use crate::error::{Error, Result};
use crate::homotopies::{put, Unit};
use crate::loops::{lambda_mix, Loop};
use crate::operators::{FMap, Toeplitz, ZOp};
use crate::scalar::{Rational, Ring};

/// The four corners of k relative to an involution Q, via P± = (1 ± Q)/2.
#[derive(Clone, Debug, PartialEq)]
pub struct QSplit<E: Ring> {
    pub pp: E,
    pub pm: E,
    pub mp: E,
    pub mm: E,
}

impl<E: Ring> QSplit<E> {
    pub fn of(q: &E, k: &E) -> Self {
        let one = k.one_like();
        let h = Rational::new(1, 2);
        let p = one.add(q).scale_q(&h);
        let m = one.sub(q).scale_q(&h);
        QSplit { pp: p.mul(k).mul(&p), pm: p.mul(k).mul(&m), mp: m.mul(k).mul(&p), mm: m.mul(k).mul(&m) }
    }

    /// k⁺ = (k + QkQ)/2.
    pub fn plus(&self) -> E {
        self.pp.add(&self.mm)
    }

    /// k⁻ = (k − QkQ)/2.
    pub fn minus(&self) -> E {
        self.pm.add(&self.mp)
    }
}

/// Λ(z^power, q) as a loop over the algebra of q.
pub fn lambda_loop<E: Ring>(q: &E, power: i64) -> Loop<E> {
    lambda_mix(&Loop::z(&q.ctx(), power), &Loop::constant(q.clone()))
}

/// L(Q, k) = W(Λ(z,Q))·k·W(Λ(z⁻¹,Q)).
pub fn l_op<E: Ring>(q: &E, k: &E) -> Toeplitz<E> {
    let w = |p| Toeplitz::w(lambda_loop(q, p));
    w(1).mul(&Toeplitz::w(Loop::constant(k.clone()))).mul(&w(-1))
}

/// The tridiagonal form: k⁺ on the diagonal, k^{++} at the corner,
/// k^{+−} above and k^{−+} below.
pub fn l_display<E: Ring>(q: &E, k: &E) -> Toeplitz<E> {
    let sp = QSplit::of(q, k);
    let sym = Loop::from_terms(&k.ctx(), [(0, sp.plus()), (1, sp.mp.clone()), (-1, sp.pm.clone())]);
    Toeplitz::new(sym, FMap::from([((0, 0), sp.mm.neg())]))
}

/// 1 + L(Q, k − 1), the extension of L to units.
pub fn l_unit<E: Ring>(q: &E, k: &E) -> Toeplitz<E> {
    Toeplitz::identity(&k.ctx()).add(&l_op(q, &k.sub(&k.one_like())))
}

fn qz<E: Ring>(ctx: &E::Ctx) -> ZOp<E> {
    let one = E::one(ctx);
    ZOp::split_diag(one.neg(), one)
}

/// L̃(k) for k on ℤ with Q = 𝖰: the corner of L(Q,k) spread out over
/// the outer nonnegative indices, with e_{0p}k^{++}e_{q0} at (p, q).
pub fn l_inflate<E: Ring>(k: &ZOp<E>) -> ZOp<ZOp<E>> {
    let ctx = k.entry_ctx();
    let one = E::one(&ctx);
    let sp = QSplit::of(&qz(&ctx), k);
    let laurent = Loop::from_terms(&ctx, [(0, sp.plus()), (1, sp.pm.clone()), (-1, sp.mp.clone())]);
    let plus = Loop::from_terms(&ctx, k.symbol_plus().terms().iter().map(|(n, c)| (*n, ZOp::unit(0, 0, c.clone()))));
    let half = plus.sub(&laurent);
    let e = |i, j| ZOp::unit(i, j, one.clone());
    let mut fin = FMap::new();
    if let Some((_, _, c0, c1)) = sp.mp.finite_bounds() {
        for q in c0.max(0)..=c1 {
            put(&mut fin, (-1, q), sp.mp.mul(&e(q, 0)));
        }
    }
    put(&mut fin, (-1, 0), sp.mp.neg());
    if let Some((r0, r1, _, _)) = sp.pm.finite_bounds() {
        for p in r0.max(0)..=r1 {
            put(&mut fin, (p, -1), e(0, p).mul(&sp.pm));
        }
    }
    put(&mut fin, (0, -1), sp.pm.neg());
    for (&(i, j), x) in k.finite() {
        if i >= 0 && j >= 0 {
            put(&mut fin, (i, j), ZOp::unit(0, 0, x.clone()));
        }
    }
    ZOp::new(laurent, half, fin)
}

/// 1 + L̃(k − 1).
pub fn l_inflate_unit<E: Ring>(k: &ZOp<E>) -> ZOp<ZOp<E>> {
    ZOp::identity(&k.entry_ctx()).add(&l_inflate(&k.sub(&k.one_like())))
}

/// E_ℤ(a(z)) = 1 − e₀₀ + a(z)e₀₀ as a loop over operators on ℤ.
pub fn corner_loop<E: Ring>(a: &Loop<E>) -> Loop<ZOp<E>> {
    let ctx = a.coeff_ctx();
    let mut out = Loop::from_terms(ctx, a.terms().iter().map(|(n, c)| (*n, ZOp::unit(0, 0, c.clone()))));
    out.add_term(0, &ZOp::identity(ctx).sub(&ZOp::unit(0, 0, E::one(ctx))));
    out
}

/// kΛ(z⁻¹,Q)k⁻¹Λ(z,Q).
pub fn twisted_loop<E: Ring>(k: &Unit<ZOp<E>>) -> Loop<ZOp<E>> {
    let q = qz(&k.forward.entry_ctx());
    Loop::constant(k.forward.clone())
        .mul(&lambda_loop(&q, -1))
        .mul(&Loop::constant(k.inverse.clone()))
        .mul(&lambda_loop(&q, 1))
}

/// L̃(k)·Λ(k⁻¹, Q_𝒯)·U(kΛ(z⁻¹,Q)k⁻¹Λ(z,Q)) and its lower right corner N(k).
#[derive(Clone, Debug)]
pub struct Section<E: Ring> {
    pub product: ZOp<ZOp<E>>,
    pub n: Toeplitz<ZOp<E>>,
    pub expected_symbol: Loop<ZOp<E>>,
}

impl<E: Ring> Section<E> {
    /// Identity outside outer indices ≥ −1.
    pub fn splits(&self) -> bool {
        self.product.laurent().is_one() && self.product.finite().keys().all(|&(i, j)| i >= -1 && j >= -1)
    }

    pub fn symbol_matches(&self) -> bool {
        *self.n.symbol() == self.expected_symbol
    }
}

/// N(k); for k = U(a) this is G(a).
pub fn symbol_section<E: Ring>(k: &Unit<ZOp<E>>) -> Result<Section<E>> {
    let ctx = k.forward.entry_ctx();
    if !k.forward.mul(&k.inverse).is_one() {
        return Err(Error::NotInvertible("operator and claimed inverse disagree".into()));
    }
    let c = twisted_loop(k);
    let lam = ZOp::split_diag(k.inverse.clone(), ZOp::identity(&ctx));
    let product = l_inflate_unit(&k.forward).mul(&lam).mul(&ZOp::laurent_op(c.clone()));
    let sym = product.symbol_plus();
    let mut reach = sym.radius() + 1;
    if let Some((r0, r1, c0, c1)) = product.finite_bounds() {
        reach = reach.max(r0.abs()).max(r1).max(c0.abs()).max(c1) + 2;
    }
    let mut fin = FMap::new();
    for p in 0..=reach {
        for q in 0..=reach {
            put(&mut fin, (p, q), product.entry(p - 1, q - 1).sub(&sym.coeff(p - q)));
        }
    }
    let expected_symbol = corner_loop(&k.forward.symbol_plus()).mul(&c);
    Ok(Section { product, n: Toeplitz::new(sym, fin), expected_symbol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{mixer, LoopUnit};
    use crate::operators::q_op;
    use crate::scalar::Mat;

    type R = Mat<Rational>;

    fn rm(r: &[&[i64]]) -> R {
        Mat::from_ints(r)
    }

    fn u_unit(a: &LoopUnit) -> Unit<ZOp<R>> {
        Unit { forward: ZOp::laurent_op(a.forward.clone()), inverse: ZOp::laurent_op(a.inverse.clone()) }
    }

    #[test]
    fn l_matches_display_and_is_multiplicative() {
        let q = rm(&[&[0, 1], &[1, 0]]);
        let k1 = rm(&[&[1, 2], &[3, 4]]);
        let k2 = rm(&[&[0, -1], &[5, 2]]);
        assert_eq!(l_op(&q, &k1), l_display(&q, &k1));
        assert_eq!(l_op(&q, &k1).mul(&l_op(&q, &k2)), l_op(&q, &k1.mul(&k2)));
        let u = rm(&[&[2, 1], &[1, 1]]);
        let ui = u.try_inverse().unwrap();
        assert!(l_unit(&q, &u).mul(&l_unit(&q, &ui)).is_one());
    }

    #[test]
    fn l_over_operators() {
        let q: ZOp<R> = q_op(&1);
        let k = ZOp::laurent_op(mixer(&rm(&[&[-1]]), 1)).add(&ZOp::unit(0, 2, rm(&[&[3]])));
        assert_eq!(l_op(&q, &k), l_display(&q, &k));
    }

    #[test]
    fn inflation_is_multiplicative() {
        let k1 = ZOp::laurent_op(Loop::from_terms(&1, [(0, rm(&[&[1]])), (1, rm(&[&[2]]))]))
            .add(&ZOp::unit(1, -1, rm(&[&[1]])));
        let k2 = ZOp::laurent_op(Loop::from_terms(&1, [(-1, rm(&[&[1]])), (2, rm(&[&[-1]]))]))
            .add(&ZOp::unit(0, 1, rm(&[&[2]])));
        assert_eq!(l_inflate(&k1).mul(&l_inflate(&k2)), l_inflate(&k1.mul(&k2)));
        assert!(l_inflate_unit(&ZOp::<R>::identity(&1)).is_one());
    }

    #[test]
    fn section_of_a_shift() {
        let a = LoopUnit::build(1, &[crate::loops::Generator::Mixer { power: 1, q: rm(&[&[-1]]) }]).unwrap();
        let s = symbol_section(&u_unit(&a)).unwrap();
        assert!(s.splits());
        assert!(s.symbol_matches());
    }

    #[test]
    fn section_of_a_mixer() {
        let qt = rm(&[&[1, 2], &[0, -1]]);
        let a = LoopUnit::build(2, &[crate::loops::Generator::Mixer { power: 1, q: qt }]).unwrap();
        let s = symbol_section(&u_unit(&a)).unwrap();
        assert!(s.splits() && s.symbol_matches());
        // c(z) = Λ(z⁻¹, B(a))Λ(z, Q)
        let b = ZOp::laurent_op(a.forward.clone()).mul(&q_op(&2)).mul(&ZOp::laurent_op(a.inverse.clone()));
        let c = lambda_loop(&b, -1).mul(&lambda_loop(&q_op(&2), 1));
        assert_eq!(corner_loop(&a.forward).mul(&c), s.expected_symbol);
    }
}
