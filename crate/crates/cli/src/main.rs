//! `loopstab` command line: verification suites, linearization of builder
//! loops, finite linearization of decompositions, homotopy traces, timings.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! configuration or input error.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use loopstab::finite_linearize::{b_f, finite_suite, tower, u_f};
use loopstab::homotopies::{
    bott, k_end_display, k_start_display, linearize_k, linearize_k_unit, linearize_u, ShiftingRotation, Variant,
};
use loopstab::json::{decomposition_from_json, op_to_json, unit_from_json, unit_to_json, EntryJson};
use loopstab::loops::{lift_loop, Generator, LoopUnit};
use loopstab::oracle::{dense_mul, truncate, Bindings};
use loopstab::report::{Check, Report};
use loopstab::scalar::{CirclePoint, Mat, Rational, Ring, Scalar};
use loopstab::suites::{self, SuiteConfig, SuiteId};

use config::{parse_rationals, suite_config, FileConfig, Overrides};

#[derive(Parser)]
#[command(name = "loopstab", version, about = "Exact verification of loop linearization identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// JSON file with default values for the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Coefficient dimension.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    window: Option<i64>,
    /// Grid size, or a list like "3/5,0:1" of t or t:s values.
    #[arg(long)]
    points: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print the report.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: Option<String>,
        /// A single point given by t; s is the nonnegative root.
        #[arg(long)]
        t: Option<String>,
        /// Factors per random decomposition.
        #[arg(long)]
        s: Option<usize>,
        /// Generators per random unit.
        #[arg(long)]
        support: Option<usize>,
        #[arg(long)]
        instances: Option<usize>,
    },
    /// B(a), the K endpoints and the K trace for a builder unit.
    Linearize {
        #[command(flatten)]
        common: Common,
        /// Builder unit JSON.
        #[arg(long)]
        input: PathBuf,
    },
    /// B_F, its box and the tower checks for a decomposition.
    FiniteLinearize {
        #[command(flatten)]
        common: Common,
        /// Decomposition JSON.
        #[arg(long)]
        input: PathBuf,
        /// Values of h for the extra inverse checks on U_F.
        #[arg(long, default_value = "0,1/2,1")]
        h: String,
    },
    /// Frames of U(a,θ,v) or K(a,θ,v) at the grid points.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "k")]
        family: Family,
    },
    /// Suite and dense product timings as JSON.
    Bench {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    U,
    K,
}

enum Failure {
    Config(String),
    Checks,
}

impl From<loopstab::Error> for Failure {
    fn from(e: loopstab::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn cfg_err(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| cfg_err(format!("{}: {e}", p.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).and_then(|_| so.flush()).map_err(cfg_err)
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(cfg_err)?;
    for r in rows {
        w.write_record(&r).map_err(cfg_err)?;
    }
    String::from_utf8(w.into_inner().map_err(cfg_err)?).map_err(cfg_err)
}

fn checks_csv(rows: &[Check]) -> Result<String, Failure> {
    csv_text(
        &["anchor", "instance", "pass", "detail"],
        rows.iter().map(|c| vec![c.anchor.clone(), c.instance.clone(), c.pass.to_string(), c.detail.clone()]),
    )
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| cfg_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| cfg_err(format!("{}: {e}", path.display())))
}

fn common_config(c: &Common, suite: Option<&str>) -> Result<SuiteConfig, Failure> {
    let file = FileConfig::load(c.config.as_deref()).map_err(Failure::Config)?;
    suite_config(
        file,
        Overrides {
            suite,
            seed: c.seed,
            d: c.d,
            support: None,
            s: None,
            window: c.window,
            points: c.points.as_deref(),
            t: None,
            instances: None,
        },
    )
    .map_err(Failure::Config)
}

fn config_json(cfg: &SuiteConfig) -> Value {
    json!({
        "suite": cfg.suite.name(),
        "seed": cfg.seed,
        "d": cfg.d,
        "support": cfg.support,
        "s": cfg.s,
        "window": cfg.window,
        "points": cfg.points.iter().map(CirclePoint::label).collect::<Vec<_>>(),
        "instances": cfg.instances,
    })
}

fn report_json(cfg: &SuiteConfig, rep: &Report) -> Value {
    json!({
        "config": config_json(cfg),
        "summary": {"rows": rep.len(), "failures": rep.failures().count(), "pass": rep.all_pass()},
        "rows": rep.rows,
    })
}

fn verdict(pass: bool) -> Result<(), Failure> {
    if pass {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn rot(p: &CirclePoint) -> Result<ShiftingRotation<Rational>, Failure> {
    Ok(ShiftingRotation::<Rational>::at(p, Variant::Unitary)?)
}

fn frame<K: EntryJson + Scalar>(p: &CirclePoint, op: &loopstab::operators::ZOp<Mat<K>>) -> Value {
    let (t, s) = p.ts().expect("rational point");
    json!({"t": t.to_string(), "s": s.to_string(), "operator": op_to_json(op)})
}

fn is_mixer(u: &LoopUnit) -> bool {
    matches!(u.provenance.as_slice(), [Generator::Mixer { power: 1, .. }])
}

fn cmd_linearize(common: &Common, input: &Path) -> Result<(), Failure> {
    let cfg = common_config(common, None)?;
    let a = unit_from_json(&read_json(input)?)?;
    let b = bott(&a);
    let mut checks = vec![Check::new("linearize.b.involution", "input", b.op().pow(2).is_one())];
    let mut trace = Vec::new();
    let end = k_end_display::<Rational>(&a);
    for p in cfg.rational_points() {
        let rt = rot(&p)?;
        let k = linearize_k_unit(&rt, &a);
        let inst = format!("input {}", p.label());
        checks.push(Check::new("linearize.k.unit", &inst, k.verify()));
        if p == CirclePoint::start() {
            checks.push(Check::new("linearize.k.start", &inst, k.forward == k_start_display::<Rational>(&a)));
        }
        if p.delta_plus() {
            checks.push(Check::new("linearize.k.end", &inst, k.forward == end));
        }
        if is_mixer(&a) {
            checks.push(Check::new("linearize.k.mixer-constant", &inst, k.forward == end));
        }
        trace.push(frame(&p, &k.forward));
    }
    let rep = Report::new(checks);
    let text = match common.format {
        Format::Json => pretty(&json!({
            "input": unit_to_json(&a),
            "B": op_to_json(b.op()),
            "K": {
                "start": op_to_json(&k_start_display::<Rational>(&a)),
                "end": op_to_json(&end),
            },
            "checks": rep.rows,
            "trace": trace,
        })),
        Format::Csv => checks_csv(&rep.rows)?,
    };
    emit(common.out.as_deref(), &text)?;
    verdict(rep.all_pass())
}

fn cmd_finite(common: &Common, input: &Path, h: &str) -> Result<(), Failure> {
    let cfg = common_config(common, None)?;
    let hs = parse_rationals(h).map_err(Failure::Config)?;
    let dec = decomposition_from_json(&read_json(input)?)?;
    let pts = cfg.rational_points();
    let mut rows = finite_suite(&dec, &pts, "input");
    for p in &pts {
        let rt = rot(p)?;
        let tw = tower::<Rational>(&dec, &rt);
        for hv in &hs {
            let inst = format!("input {} h={hv}", p.label());
            let res = tw.as_ref().map(|tw| u_f(&dec, &rt, tw, hv).verify()).map_err(Clone::clone);
            rows.push(Check::from_result("finite.u_f.inverse", inst, res));
        }
    }
    let rep = Report::new(rows);
    let bf = b_f::<Rational>(&dec)?;
    let (m, n) = dec.class.partial(dec.len());
    let text = match common.format {
        Format::Json => pretty(&json!({
            "B_F": op_to_json(bf.op()),
            "box": {"M": m, "N": n},
            "checks": rep.rows,
        })),
        Format::Csv => checks_csv(&rep.rows)?,
    };
    emit(common.out.as_deref(), &text)?;
    verdict(rep.all_pass())
}

fn cmd_trace(common: &Common, input: &Path, family: Family) -> Result<(), Failure> {
    let cfg = common_config(common, None)?;
    let a = unit_from_json(&read_json(input)?)?;
    let fa = lift_loop::<Rational>(&a.forward);
    let mut frames = Vec::new();
    for p in cfg.rational_points() {
        let rt = rot(&p)?;
        let op = match family {
            Family::U => linearize_u(&rt, &fa),
            Family::K => linearize_k(&rt, &a),
        };
        frames.push((p, op));
    }
    let text = match common.format {
        Format::Json => pretty(&Value::Array(frames.iter().map(|(p, op)| frame(p, op)).collect())),
        Format::Csv => {
            let mut rows = Vec::new();
            for (p, op) in &frames {
                let (t, s) = p.ts().expect("rational point");
                let mut push = |part: &str, i: String, j: String, m: &Mat<loopstab::scalar::VLaurent<Rational>>| {
                    for (r, row) in m.rows().iter().enumerate() {
                        for (c, x) in row.iter().enumerate() {
                            rows.push(vec![
                                t.to_string(),
                                s.to_string(),
                                part.to_string(),
                                i.clone(),
                                j.clone(),
                                r.to_string(),
                                c.to_string(),
                                match x.to_json() {
                                    Value::String(v) => v,
                                    other => other.to_string(),
                                },
                            ]);
                        }
                    }
                };
                for (n, m) in op.laurent().terms() {
                    push("laurent", n.to_string(), String::new(), m);
                }
                for (n, m) in op.half().terms() {
                    push("half", n.to_string(), String::new(), m);
                }
                for ((i, j), m) in op.finite() {
                    push("finite", i.to_string(), j.to_string(), m);
                }
            }
            csv_text(&["t", "s", "part", "i", "j", "row", "col", "value"], rows)?
        }
    };
    emit(common.out.as_deref(), &text)
}

fn cmd_bench(common: &Common, suite: Option<&str>) -> Result<(), Failure> {
    let cfg = common_config(common, suite)?;
    let ids: Vec<SuiteId> = if cfg.suite == SuiteId::All { SuiteId::EACH.to_vec() } else { vec![cfg.suite] };
    let mut pass = true;
    let mut timings = Vec::new();
    for id in ids {
        let c = SuiteConfig { suite: id, ..cfg.clone() };
        let t0 = Instant::now();
        let rep = suites::run(&c);
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        pass &= rep.all_pass();
        timings.push(json!({"suite": id.name(), "rows": rep.len(), "failures": rep.failures().count(), "millis": ms}));
    }
    let mut r = cfg.rng("bench", 0);
    let a = loopstab::random::loop_unit(&mut r, cfg.d, cfg.support);
    let op = bott(&a).into_op();
    let mut dense = Vec::new();
    for w in [8i64, 16, 32] {
        let win = [(-w, w)];
        let t0 = Instant::now();
        let x = truncate(&op, &win, &Bindings::none())?;
        let sq = dense_mul(&x, &x)?;
        let ms = t0.elapsed().as_secs_f64() * 1e3;
        dense.push(json!({"window": 2 * w, "size": sq.size(), "millis": ms}));
    }
    let text = pretty(&json!({"config": config_json(&cfg), "suites": timings, "dense_mul": dense}));
    emit(common.out.as_deref(), &text)?;
    verdict(pass)
}

fn cmd_verify(
    common: &Common,
    suite: Option<&str>,
    t: Option<&str>,
    s: Option<usize>,
    support: Option<usize>,
    instances: Option<usize>,
) -> Result<(), Failure> {
    let file = FileConfig::load(common.config.as_deref()).map_err(Failure::Config)?;
    let cfg = suite_config(
        file,
        Overrides {
            suite,
            seed: common.seed,
            d: common.d,
            support,
            s,
            window: common.window,
            points: common.points.as_deref(),
            t,
            instances,
        },
    )
    .map_err(Failure::Config)?;
    let rep = suites::run(&cfg);
    let text = match common.format {
        Format::Json => pretty(&report_json(&cfg, &rep)),
        Format::Csv => checks_csv(&rep.rows)?,
    };
    emit(common.out.as_deref(), &text)?;
    verdict(rep.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Verify { common, suite, t, s, support, instances } => {
            cmd_verify(common, suite.as_deref(), t.as_deref(), *s, *support, *instances)
        }
        Cmd::Linearize { common, input } => cmd_linearize(common, input),
        Cmd::FiniteLinearize { common, input, h } => cmd_finite(common, input, h),
        Cmd::Trace { common, input, family } => cmd_trace(common, input, *family),
        Cmd::Bench { common, suite } => cmd_bench(common, suite.as_deref()),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

