use crate::error::{Error, Result};
use crate::loops::Loop;
use crate::operators::{invert_one_plus, FMap, ZOp};
use crate::scalar::{Mat, Rational, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Extra entries confined to rows m..n.
    L,
    /// Extra entries confined to columns m..n.
    R,
    /// Extra entries inside the (m,n)-box.
    Both,
}

/// Λ(𝗌, Q) = diag(𝗌 on negatives, 1 on ℕ).
pub fn lambda_base<E: Ring>(s: &E) -> ZOp<E> {
    ZOp::split_diag(s.clone(), s.one_like())
}

fn inside(i: i64, m: i64, n: i64) -> bool {
    m <= i && i <= n
}

/// Whether a finite matrix fits the class of `kind` with window (m, n).
pub fn fits<E: Ring>(data: &FMap<E>, kind: Kind, m: i64, n: i64) -> bool {
    data.keys().all(|&(i, j)| match kind {
        Kind::L => inside(i, m, n),
        Kind::R => inside(j, m, n),
        Kind::Both => inside(i, m, n) && inside(j, m, n),
    })
}

/// An operator equal to Λ(𝗌, Q) outside the stripes of its class.
#[derive(Clone, Debug, PartialEq)]
pub struct StripePerturbation<E: Ring> {
    pub base: E,
    pub kind: Kind,
    pub m: i64,
    pub n: i64,
    /// A − Λ(𝗌, Q).
    pub data: FMap<E>,
}

impl<E: Ring> StripePerturbation<E> {
    pub fn new(base: E, kind: Kind, m: i64, n: i64, data: FMap<E>) -> Result<Self> {
        if !(m <= 0 && 0 <= n) {
            return Err(Error::BadClass(format!("window [{m}, {n}] must contain 0")));
        }
        let data: FMap<E> = data.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        if !fits(&data, kind, m, n) {
            return Err(Error::StripeClassViolation(format!("{kind:?}({m},{n})")));
        }
        Ok(StripePerturbation { base, kind, m, n, data })
    }

    /// Read an operator as a perturbation of Λ(𝗌, Q) of the given class.
    pub fn from_op(op: &ZOp<E>, base: &E, kind: Kind, m: i64, n: i64) -> Result<Self> {
        let diff = op.sub(&lambda_base(base));
        if !diff.is_finite() {
            return Err(Error::StripeClassViolation("not a finite perturbation of the base".into()));
        }
        Self::new(base.clone(), kind, m, n, diff.finite().clone())
    }

    pub fn op(&self) -> ZOp<E> {
        let ctx = self.base.ctx();
        lambda_base(&self.base).add(&ZOp::finite_op(&ctx, self.data.clone()))
    }

    /// Red_{(m,n)}: drop the stripe entries outside the box.
    pub fn reduce(&self) -> Self {
        let (m, n) = (self.m, self.n);
        let data = self.data.iter().filter(|(&(i, j), _)| inside(i, m, n) && inside(j, m, n));
        StripePerturbation {
            base: self.base.clone(),
            kind: Kind::Both,
            m,
            n,
            data: data.map(|(k, x)| (*k, x.clone())).collect(),
        }
    }

    /// C_{A,Ã}(t) = A + t(Ã − A).
    pub fn path(&self, t: &Rational) -> ZOp<E> {
        let keep = Rational::one().sub(t);
        let (m, n) = (self.m, self.n);
        let data = self
            .data
            .iter()
            .map(|(&(i, j), x)| ((i, j), if inside(i, m, n) && inside(j, m, n) { x.clone() } else { x.scale_q(&keep) }))
            .collect();
        lambda_base(&self.base).add(&ZOp::finite_op(&self.base.ctx(), data))
    }
}

/// Red_{(m,n)} of an operator that must be an L- or R-perturbation of Λ(𝗌, Q).
pub fn reduce_op<E: Ring>(op: &ZOp<E>, base: &E, m: i64, n: i64) -> Result<StripePerturbation<E>> {
    let diff = op.sub(&lambda_base(base));
    if !diff.is_finite() {
        return Err(Error::WrongKind("not a finite perturbation of the base".into()));
    }
    let kind = [Kind::L, Kind::R]
        .into_iter()
        .find(|&k| fits(diff.finite(), k, m, n))
        .ok_or_else(|| Error::WrongKind(format!("neither L({m},{n}) nor R({m},{n})")))?;
    Ok(StripePerturbation::new(base.clone(), kind, m, n, diff.finite().clone())?.reduce())
}

/// C_{A,Ã}(t)⁻¹ = A⁻¹·C_{A,Ã}(−t)·A⁻¹.
pub fn path_inverse<E: Ring>(a: &StripePerturbation<E>, a_inv: &ZOp<E>, t: &Rational) -> ZOp<E> {
    a_inv.mul(&a.path(&t.neg())).mul(a_inv)
}

/// Closed-form inverse: invert the middle block M, then
/// rows m..n of A⁻¹ are [−M⁻¹L⁻𝗌⁻¹, M⁻¹, −M⁻¹L⁺] (L case; R is the transpose pattern).
pub fn stripe_inverse<K: Scalar>(a: &StripePerturbation<Mat<K>>) -> Result<ZOp<Mat<K>>> {
    let d = a.base.dim();
    let (m, n) = (a.m, a.n);
    let s_inv = a.base.get(0, 0).try_inv().ok_or(Error::SingularMiddleBlock)?;
    let s_inv_m = Mat::scalar(d, s_inv.clone());
    let diag = |i: i64| if i < 0 { a.base.clone() } else { a.base.one_like() };
    let diag_inv = |i: i64| if i < 0 { s_inv_m.clone() } else { a.base.one_like() };
    // M − 1 on the window
    let mut g: FMap<Mat<K>> = FMap::new();
    for i in m..=n {
        let x = diag(i).sub(&a.base.one_like());
        if !x.is_zero() {
            g.insert((i, i), x);
        }
    }
    for (&(i, j), x) in &a.data {
        if inside(i, m, n) && inside(j, m, n) {
            let e = g.entry((i, j)).or_insert_with(|| x.zero_like());
            *e = e.add(x);
        }
    }
    g.retain(|_, x| !x.is_zero());
    let mut m_inv = invert_one_plus(&g, d).map_err(|_| Error::SingularMiddleBlock)?;
    for i in m..=n {
        let e = m_inv.entry((i, i)).or_insert_with(|| a.base.zero_like());
        *e = e.add(&a.base.one_like());
    }
    let row = |i: i64| -> Vec<(i64, &Mat<K>)> {
        m_inv.range((i, i64::MIN)..=(i, i64::MAX)).map(|(&(_, j), x)| (j, x)).collect()
    };
    let mut out: FMap<Mat<K>> = FMap::new();
    let mut add = |k: (i64, i64), x: Mat<K>| {
        let e = out.entry(k).or_insert_with(|| x.zero_like());
        *e = e.add(&x);
    };
    for (&(i, j), x) in &m_inv {
        add((i, j), x.sub(&if i == j { diag_inv(i) } else { x.zero_like() }));
    }
    for (&(i, j), x) in &a.data {
        let (ri, rj) = (inside(i, m, n), inside(j, m, n));
        if ri && !rj {
            // −M⁻¹·L·diag⁻¹
            for r in m..=n {
                if let Some(y) = m_inv.get(&(r, i)) {
                    add((r, j), y.mul(x).mul(&diag_inv(j)).neg());
                }
            }
        } else if rj && !ri {
            // −diag⁻¹·R·M⁻¹
            for (c, y) in row(j) {
                add((i, c), diag_inv(i).mul(x).mul(y).neg());
            }
        } else if !ri && !rj {
            return Err(Error::StripeClassViolation("entry outside every stripe".into()));
        }
    }
    let lam = ZOp::new(Loop::constant(s_inv_m.clone()), Loop::constant(a.base.one_like().sub(&s_inv_m)), FMap::new());
    let inv = lam.add(&ZOp::finite_op(&d, out));
    if !a.op().mul(&inv).is_one() || !inv.mul(&a.op()).is_one() {
        return Err(Error::SingularMiddleBlock);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopies::{put, vscalar};
    use crate::scalar::{VLaurent, VMat};

    type R = Mat<Rational>;

    fn r(x: i64) -> R {
        Mat::scalar(1, Rational::from_int(x))
    }

    fn l_pert() -> StripePerturbation<R> {
        let mut data = FMap::new();
        put(&mut data, (0, -3), r(2));
        put(&mut data, (0, 1), r(1));
        put(&mut data, (1, 4), r(-1));
        put(&mut data, (-1, 0), r(3));
        StripePerturbation::new(r(-1), Kind::L, -1, 1, data).unwrap()
    }

    #[test]
    fn reduce_drops_off_box() {
        let a = l_pert();
        let red = a.reduce();
        assert_eq!(red.data.len(), 2);
        assert_eq!(red.reduce(), red);
        assert_eq!(a.path(&Rational::zero()), a.op());
        assert_eq!(a.path(&Rational::one()), red.op());
        let mut one = FMap::new();
        put(&mut one, (0, 4), r(1));
        let single = StripePerturbation::new(r(1), Kind::L, 0, 1, one).unwrap();
        assert!(single.reduce().data.is_empty());
    }

    #[test]
    fn inverse_law() {
        let a = l_pert();
        let inv = stripe_inverse(&a).unwrap();
        let inv_s = StripePerturbation::from_op(&inv, &r(-1), Kind::L, -1, 1).unwrap();
        let red_inv = stripe_inverse(&a.reduce()).unwrap();
        assert_eq!(inv_s.reduce().op(), red_inv);
        for t in [Rational::new(1, 3), Rational::new(1, 2), Rational::from_int(2)] {
            let c = a.path(&t);
            assert!(c.mul(&path_inverse(&a, &inv, &t)).is_one());
            assert_eq!(path_inverse(&a, &inv, &t), inv_s.path(&t));
            let half = a.path(&t.mul(&Rational::new(1, 2)));
            assert_eq!(half.mul(&inv).mul(&half), c);
        }
    }

    #[test]
    fn transposed_stripes() {
        let a = l_pert();
        let data = a.data.iter().map(|(&(i, j), x)| ((j, i), x.clone())).collect();
        let b = StripePerturbation::new(r(-1), Kind::R, -1, 1, data).unwrap();
        let inv = stripe_inverse(&b).unwrap();
        assert!(b.op().mul(&inv).is_one());
        assert!(matches!(reduce_op(&b.op(), &r(-1), 0, 0), Err(Error::WrongKind(_))));
    }

    #[test]
    fn involutions_stay_involutions() {
        // A = Q + e₀,₋₂·2 + stuff squaring to one
        let mut data = FMap::new();
        put(&mut data, (0, -2), r(2));
        let a = StripePerturbation::new(r(-1), Kind::L, 0, 0, data).unwrap();
        assert!(a.op().mul(&a.op()).is_one());
        for t in [Rational::new(1, 2), Rational::new(1, 3), Rational::from_int(3)] {
            let c = a.path(&t);
            assert!(c.mul(&c).is_one());
            let h = a.path(&t.mul(&Rational::new(1, 2)));
            assert_eq!(h.mul(&a.op()).mul(&h), c);
        }
    }

    #[test]
    fn formal_base() {
        let v: VMat<Rational> = vscalar(1, 1);
        let mut data = FMap::new();
        put(&mut data, (-1, 2), Mat::scalar(1, VLaurent::vpow(2)));
        let a = StripePerturbation::new(v.clone(), Kind::L, -1, 0, data).unwrap();
        let inv = stripe_inverse(&a).unwrap();
        assert!(a.op().mul(&inv).is_one());
    }
}
