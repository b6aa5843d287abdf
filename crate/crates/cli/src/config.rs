use std::path::Path;

use serde::Deserialize;

use loopstab::scalar::{pythagorean_grid, CirclePoint, Rational};
use loopstab::suites::{SuiteConfig, SuiteId};

/// Optional config file; every key may be overridden by a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub suite: Option<String>,
    pub seed: Option<u64>,
    pub d: Option<usize>,
    pub support: Option<usize>,
    pub s: Option<usize>,
    pub window: Option<i64>,
    pub points: Option<String>,
    pub instances: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else { return Ok(FileConfig::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: loopstab::Error| e.to_string())
}

/// A grid size n, or a comma separated list of t or t:s points.
pub fn parse_points(spec: &str) -> Result<Vec<CirclePoint>, String> {
    if let Ok(n) = spec.trim().parse::<usize>() {
        if n == 0 {
            return Err("grid size must be positive".into());
        }
        return Ok(pythagorean_grid(n));
    }
    spec.split(',')
        .map(|p| {
            let p = p.trim();
            match p.split_once(':') {
                Some((t, s)) => CirclePoint::rational(rational(t)?, rational(s)?),
                None => CirclePoint::from_t(rational(p)?),
            }
            .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn parse_rationals(spec: &str) -> Result<Vec<Rational>, String> {
    spec.split(',').map(|x| rational(x.trim())).collect()
}

pub struct Overrides<'a> {
    pub suite: Option<&'a str>,
    pub seed: Option<u64>,
    pub d: Option<usize>,
    pub support: Option<usize>,
    pub s: Option<usize>,
    pub window: Option<i64>,
    pub points: Option<&'a str>,
    pub t: Option<&'a str>,
    pub instances: Option<usize>,
}

pub fn suite_config(file: FileConfig, o: Overrides) -> Result<SuiteConfig, String> {
    let base = SuiteConfig::default();
    let suite = match o.suite.map(str::to_string).or(file.suite) {
        Some(s) => s.parse::<SuiteId>().map_err(|e| e.to_string())?,
        None => SuiteId::All,
    };
    let points = match (o.t, o.points.map(str::to_string).or(file.points)) {
        (Some(t), _) => {
            let mut pts = parse_points(t)?;
            pts.insert(0, CirclePoint::start());
            pts.push(CirclePoint::end());
            pts.dedup();
            pts
        }
        (None, Some(p)) => parse_points(&p)?,
        (None, None) => base.points,
    };
    let cfg = SuiteConfig {
        suite,
        seed: o.seed.or(file.seed).unwrap_or(base.seed),
        d: o.d.or(file.d).unwrap_or(base.d),
        support: o.support.or(file.support).unwrap_or(base.support),
        s: o.s.or(file.s).unwrap_or(base.s),
        window: o.window.or(file.window).unwrap_or(base.window),
        points,
        instances: o.instances.or(file.instances).unwrap_or(base.instances),
    };
    if !(1..=4).contains(&cfg.d) {
        return Err(format!("--d must lie in 1..=4, got {}", cfg.d));
    }
    if cfg.support == 0 || cfg.s == 0 || cfg.instances == 0 {
        return Err("--support, --s and --instances must be positive".into());
    }
    if !(4..=32).contains(&cfg.window) {
        return Err(format!("--window must lie in 4..=32, got {}", cfg.window));
    }
    Ok(cfg)
}
