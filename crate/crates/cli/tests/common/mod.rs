#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use hopfcalc::dsl;
use hopfcalc::{CrossAlgebra, WedgeOptions};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfcalc"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hopfcalc")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Writes `text` to a fresh file in the temp directory.
pub fn temp_spec(tag: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hopfcalc-{}-{tag}.spec", std::process::id()));
    std::fs::write(&path, text).expect("write temp spec");
    path
}

pub fn corpus() -> Vec<(String, String)> {
    include_str!("../data/roundtrip.txt")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (calc, expr) = l.split_once('\t').expect("calculus<TAB>expression");
            (calc.to_string(), expr.to_string())
        })
        .collect()
}

pub fn cross(builtin: &str) -> CrossAlgebra {
    let spec = dsl::builtin(builtin).expect("builtin");
    let calc = spec.calculus().expect("calculus");
    CrossAlgebra::new(calc, WedgeOptions::with_max_degree(spec.max_degree)).expect("cross algebra")
}

/// Checks evaluate -> print_normal -> parse -> evaluate on every corpus entry;
/// returns the failures.
pub fn roundtrip_failures() -> (usize, Vec<String>) {
    let entries = corpus();
    let mut failures = Vec::new();
    let mut algebras = std::collections::BTreeMap::new();
    for (calc, expr) in &entries {
        let cp = algebras.entry(calc.clone()).or_insert_with(|| cross(calc));
        let outcome = dsl::parse_and_evaluate(expr, cp).map_err(|e| e.to_string()).and_then(|v| {
            let printed = dsl::print_normal(&v, cp);
            let back = dsl::parse_and_evaluate(&printed, cp).map_err(|e| format!("reparse `{printed}`: {e}"))?;
            if back.into_cross(cp) == v.into_cross(cp) {
                Ok(())
            } else {
                Err(format!("`{printed}` evaluates differently"))
            }
        });
        if let Err(e) = outcome {
            failures.push(format!("{calc}: {expr}: {e}"));
        }
    }
    (entries.len(), failures)
}

/// The S3 spec text with a different generating subset.
pub fn s3_spec_with(generators: &str) -> String {
    let mut spec = dsl::builtin("s3").unwrap();
    spec.generators = generators.split_whitespace().map(str::to_string).collect();
    spec.to_text()
}
