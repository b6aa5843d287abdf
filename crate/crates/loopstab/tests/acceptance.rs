//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Each criterion runs its suite at d = 1, 2, 3 with a fixed seed and the
//! default rational grid. The last one also serializes the full report
//! twice and compares bytes.

use std::process::ExitCode;
use std::time::Instant;

use loopstab::report::Report;
use loopstab::suites::{run, SuiteConfig, SuiteId};

const SEED: u64 = 20_240_601;

fn config(suite: SuiteId, d: usize) -> SuiteConfig {
    SuiteConfig { suite, seed: SEED, d, s: 3, ..SuiteConfig::default() }
}

fn summarize(reports: &[Report]) -> (usize, Vec<String>) {
    let rows = reports.iter().map(Report::len).sum();
    let failed = reports
        .iter()
        .flat_map(|r| r.failures())
        .map(|c| format!("{} [{}] {}", c.anchor, c.instance, c.detail))
        .collect();
    (rows, failed)
}

fn criterion(n: usize, title: &str, suite: SuiteId, extra: impl FnOnce() -> Result<(), String>) -> bool {
    let t0 = Instant::now();
    let reports: Vec<Report> = (1..=3).map(|d| run(&config(suite, d))).collect();
    let (rows, mut failed) = summarize(&reports);
    if rows == 0 {
        failed.push("no rows".into());
    }
    if let Err(e) = extra() {
        failed.push(e);
    }
    let ok = failed.is_empty();
    println!(
        "{} criterion {n:>2} {title}: {rows} rows, {} failures ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        failed.len(),
        t0.elapsed().as_secs_f64()
    );
    for f in failed.iter().take(10) {
        println!("       {f}");
    }
    ok
}

fn none() -> Result<(), String> {
    Ok(())
}

fn reproducible() -> Result<(), String> {
    let cfg = SuiteConfig { seed: 42, ..SuiteConfig::default() };
    let a = serde_json::to_vec(&run(&cfg)).map_err(|e| e.to_string())?;
    let b = serde_json::to_vec(&run(&cfg)).map_err(|e| e.to_string())?;
    if a != b {
        return Err("reports with the same seed differ".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let t0 = Instant::now();
    let results = [
        criterion(1, "key lemma", SuiteId::Artkey, none),
        criterion(2, "stabilization endpoints, endomorphism, recovery", SuiteId::Stabilize, none),
        criterion(3, "Bott calculus", SuiteId::Bott, none),
        criterion(4, "linearization homotopies", SuiteId::Linearize, none),
        criterion(5, "Toeplitz product rule and Z endpoints", SuiteId::Toeplitz, none),
        criterion(6, "contractibility chain", SuiteId::Contract, none),
        criterion(7, "finite linearization", SuiteId::Finite, none),
        criterion(8, "unitary variant", SuiteId::Unitary, none),
        criterion(9, "polynomial variant", SuiteId::Poly, none),
        criterion(10, "dense oracle equivalence and determinism", SuiteId::OracleEquiv, reproducible),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("{passed}/{} criteria pass ({:.1}s)", results.len(), t0.elapsed().as_secs_f64());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
