//! Verification suites: each returns report rows for randomized and fixed instances.

mod algebra;
mod contract;
mod equiv;
mod variants;

use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::{pythagorean_grid, CirclePoint};

pub use algebra::{artkey, bott_suite, linearize_suite, stabilize_suite};
pub use contract::{contract_suite, toeplitz_suite};
pub use equiv::oracle_equiv;
pub use variants::{poly_suite, unitary_suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    Artkey,
    Stabilize,
    Bott,
    Linearize,
    Toeplitz,
    Contract,
    Finite,
    OracleEquiv,
    Unitary,
    Poly,
    All,
}

impl SuiteId {
    pub const EACH: [SuiteId; 10] = [
        SuiteId::Artkey,
        SuiteId::Stabilize,
        SuiteId::Bott,
        SuiteId::Linearize,
        SuiteId::Toeplitz,
        SuiteId::Contract,
        SuiteId::Finite,
        SuiteId::OracleEquiv,
        SuiteId::Unitary,
        SuiteId::Poly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Artkey => "artkey",
            SuiteId::Stabilize => "stabilize",
            SuiteId::Bott => "bott",
            SuiteId::Linearize => "linearize",
            SuiteId::Toeplitz => "toeplitz",
            SuiteId::Contract => "contract",
            SuiteId::Finite => "finite",
            SuiteId::OracleEquiv => "oracle-equiv",
            SuiteId::Unitary => "unitary",
            SuiteId::Poly => "poly",
            SuiteId::All => "all",
        }
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::EACH
            .into_iter()
            .chain([SuiteId::All])
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s}")))
    }
}

/// Knobs shared by all suites. The same config and seed give the same report.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub seed: u64,
    pub d: usize,
    /// Generators per random unit.
    pub support: usize,
    /// Factors per random decomposition.
    pub s: usize,
    pub window: i64,
    pub points: Vec<CirclePoint>,
    /// Randomized instances per check.
    pub instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteId::All,
            seed: 0,
            d: 2,
            support: 2,
            s: 2,
            window: 8,
            points: pythagorean_grid(4),
            instances: 20,
        }
    }
}

impl SuiteConfig {
    /// Independent stream for instance `i` of the check family `tag`.
    pub fn rng(&self, tag: &str, i: usize) -> ChaCha8Rng {
        let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
        crate::random::rng(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ h ^ (i as u64).wrapping_mul(0x2545_f491))
    }

    /// Rational points of the config, endpoints always included.
    pub fn rational_points(&self) -> Vec<CirclePoint> {
        let mut pts: Vec<CirclePoint> = self.points.iter().filter(|p| p.ts().is_some()).cloned().collect();
        for p in [CirclePoint::start(), CirclePoint::end()] {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts
    }
}

/// Largest window the dense checks will grow to.
pub(crate) const MAX_WINDOW: i64 = 32;

/// Evaluate `f` on growing windows from `w` until its dense product has a
/// nonempty safe region; `f` returns the product and the exact truncation.
pub(crate) fn on_safe_window(
    w: i64,
    f: impl Fn(i64) -> Result<(crate::oracle::DenseWindow<crate::scalar::Rational>, crate::oracle::DenseWindow<crate::scalar::Rational>)>,
) -> Result<bool> {
    let mut w = w;
    loop {
        let (prod, exact) = f(w)?;
        if prod.safe_count() > 0 {
            return prod.agrees_with(&exact);
        }
        if w >= MAX_WINDOW {
            return Ok(false);
        }
        w = (w + 4).min(MAX_WINDOW);
    }
}

/// Run `f` on instances 0..n in parallel and gather the rows.
pub(crate) fn per_instance(n: usize, f: impl Fn(usize) -> Vec<Check> + Sync + Send) -> Vec<Check> {
    (0..n).into_par_iter().flat_map_iter(f).collect()
}

fn run_one(cfg: &SuiteConfig, id: SuiteId) -> Vec<Check> {
    match id {
        SuiteId::Artkey => artkey(cfg),
        SuiteId::Stabilize => stabilize_suite(cfg),
        SuiteId::Bott => bott_suite(cfg),
        SuiteId::Linearize => linearize_suite(cfg),
        SuiteId::Toeplitz => toeplitz_suite(cfg),
        SuiteId::Contract => contract_suite(cfg),
        SuiteId::Finite => finite_suite(cfg),
        SuiteId::OracleEquiv => oracle_equiv(cfg),
        SuiteId::Unitary => unitary_suite(cfg),
        SuiteId::Poly => poly_suite(cfg),
        SuiteId::All => SuiteId::EACH.par_iter().flat_map_iter(|&i| run_one(cfg, i)).collect(),
    }
}

pub fn run(cfg: &SuiteConfig) -> Report {
    Report::new(run_one(cfg, cfg.suite))
}

/// Random decompositions plus the fixed examples.
pub fn finite_suite(cfg: &SuiteConfig) -> Vec<Check> {
    use crate::finite_linearize::{b_f, finite_suite as one};
    use crate::loops::{Generator, LoopDecomposition, LoopUnit};
    use crate::operators::q_op;
    let pts = cfg.rational_points();
    let mut out = per_instance(cfg.instances.max(10), |i| {
        let mut r = cfg.rng("finite", i);
        let s = 1 + i % cfg.s.max(1);
        let dec = crate::random::decomposition(&mut r, cfg.d, s);
        one(&dec, &pts, &format!("random #{i} s={s} d={}", cfg.d))
    });
    let mut r = cfg.rng("finite.fixed", 0);
    let q = loop {
        let q = crate::random::involution(&mut r, cfg.d);
        let one = crate::scalar::Mat::scalar(cfg.d, crate::scalar::Rational::one());
        if q != one {
            break q;
        }
    };
    let mixer = LoopUnit::build(cfg.d, &[Generator::Mixer { power: 1, q }]).expect("involution");
    let dec = LoopDecomposition::with_default_class(vec![mixer.clone()]).expect("mixer window");
    out.extend(one(&dec, &pts, "single mixer"));
    let bf = b_f::<crate::scalar::Rational>(&dec);
    out.push(Check::from_result(
        "finite.b_f.linear-loop",
        "single mixer",
        bf.map(|b| b == crate::homotopies::bott(&mixer) && dec.class.partial(1) == (0, 1)),
    ));
    let triv = LoopDecomposition::with_default_class(vec![LoopUnit::identity(cfg.d)]).expect("trivial");
    out.push(Check::from_result("finite.b_f.trivial", "unit factor", b_f::<crate::scalar::Rational>(&triv).map(|b| *b.op() == q_op(&cfg.d))));
    out.extend(one(&triv, &pts, "unit factor"));
    out
}
