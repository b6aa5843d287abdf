use super::unit::LoopUnit;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub m: i64,
    pub n: i64,
    pub tag: Tag,
}

/// Per-factor windows F = [(m₁,n₁),…,(m_s,n_s)].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinitenessClass {
    pub windows: Vec<Window>,
}

impl FinitenessClass {
    /// (M_k, N_k) = Σ_{j≤k} (mⱼ, nⱼ); k = 0 gives (0, 0).
    pub fn partial(&self, k: usize) -> (i64, i64) {
        self.windows[..k].iter().fold((0, 0), |(m, n), w| (m + w.m, n + w.n))
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }
}

/// Factorization a = a_s⋯a₁ with windows; `factors[0]` is a₁.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopDecomposition {
    pub factors: Vec<LoopUnit>,
    pub class: FinitenessClass,
}

impl LoopDecomposition {
    pub fn new(factors: Vec<LoopUnit>, class: FinitenessClass) -> Result<Self> {
        let dec = LoopDecomposition { factors, class };
        dec.validate()?;
        Ok(dec)
    }

    /// Tightest L-windows containing 0 for each factor.
    pub fn with_default_class(factors: Vec<LoopUnit>) -> Result<Self> {
        let windows = factors
            .iter()
            .map(|u| {
                let (lo, hi) = u.forward.support().unwrap_or((0, 0));
                Window { m: lo.min(0), n: hi.max(0), tag: Tag::L }
            })
            .collect();
        Self::new(factors, FinitenessClass { windows })
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.len() != self.class.len() {
            return Err(Error::BadClass("one window per factor required".into()));
        }
        let d = self.factors.first().map(|u| u.dim());
        for (j, (u, w)) in self.factors.iter().zip(&self.class.windows).enumerate() {
            if Some(u.dim()) != d {
                return Err(Error::BadClass("factors of different sizes".into()));
            }
            if !(w.m <= 0 && 0 <= w.n) {
                return Err(Error::BadClass(format!("window {j} = [{}, {}] must contain 0", w.m, w.n)));
            }
            let (loop_, lo, hi) = match w.tag {
                Tag::L => (&u.forward, w.m, w.n),
                Tag::R => (&u.inverse, -w.n, -w.m),
            };
            if let Some((a, b)) = loop_.support() {
                if a < lo || b > hi {
                    return Err(Error::BadClass(format!(
                        "factor {} support [{a}, {b}] outside [{lo}, {hi}]",
                        j + 1
                    )));
                }
            }
            if !u.verify() {
                return Err(Error::NotInvertible(format!("factor {}", j + 1)));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.factors.first().map_or(1, |u| u.dim())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// a = a_s⋯a₁.
    pub fn product(&self) -> LoopUnit {
        let mut acc = LoopUnit::identity(self.dim());
        for u in &self.factors {
            acc = u.mul(&acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::Generator;
    use crate::scalar::{Mat, Rational, Ring};

    #[test]
    fn windows_and_sums() {
        let z = LoopUnit::build(1, &[Generator::Mixer { power: 1, q: Mat::scalar(1, -Rational::one()) }]).unwrap();
        let dec = LoopDecomposition::with_default_class(vec![z.clone(), z.inv()]).unwrap();
        assert_eq!(dec.class.partial(2), (-1, 1));
        assert!(dec.product().forward.is_one());
        let bad = FinitenessClass { windows: vec![Window { m: -1, n: 0, tag: Tag::L }] };
        assert!(LoopDecomposition::new(vec![z.clone()], bad).is_err());
        let r = FinitenessClass { windows: vec![Window { m: 0, n: 1, tag: Tag::R }] };
        assert!(LoopDecomposition::new(vec![z.inv()], r).is_err());
        let r = FinitenessClass { windows: vec![Window { m: 0, n: 1, tag: Tag::R }] };
        assert!(LoopDecomposition::new(vec![z], r).is_ok());
    }
}
