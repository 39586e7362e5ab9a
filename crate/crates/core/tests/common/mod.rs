//! Helpers for running compiled programs under node.

#![allow(dead_code)]

pub mod abi;
pub mod gen;
pub mod golden;

use std::io::Write;
use std::process::Command;

use pljs::bundle::{bundle, run_driver, Report, RUNTIME_JS};
use pljs::codegen::Options;
use pljs::interp::Outcome;
use pljs::ops::OpTable;
use pljs::parser::parse_str;
use pljs::pipeline::{add_query, compile_modules};
use pljs::reader::read_module;

pub const NODE: &str = "node";

pub fn node_available() -> bool {
    Command::new(NODE).arg("--version").output().map(|o| o.status.success()).unwrap_or(false)
}

/// Runs a script under node; returns (stdout, stderr, exit code).
pub fn run_js(script: &str) -> (String, String, i32) {
    let mut f = tempfile::Builder::new().suffix(".js").tempfile().unwrap();
    f.write_all(script.as_bytes()).unwrap();
    f.flush().unwrap();
    if let Ok(keep) = std::env::var("PLJS_KEEP_JS") {
        std::fs::write(keep, script).unwrap();
    }
    let out = Command::new(NODE).arg(f.path()).output().expect("node runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

/// Bundle that solves `query` in the first of `sources`.
pub fn query_bundle(sources: &[&str], query: &str, opts: Options, report: Report) -> String {
    let mut mods: Vec<_> = sources.iter().map(|s| read_module(s).unwrap().0).collect();
    let goal = parse_str(query, &OpTable::with_assertions()).unwrap();
    let names = add_query(&mut mods[0], &goal);
    let module = mods[0].name.clone();
    let c = compile_modules(mods, opts).unwrap();
    bundle(RUNTIME_JS, &c, &run_driver(&module, &names, report, 10_000))
}

/// Solves `query` under node and returns the outcome, or the error text.
pub fn node_query(sources: &[&str], query: &str, opts: Options) -> Result<Outcome, String> {
    let (out, err, code) = run_js(&query_bundle(sources, query, opts, Report::Json));
    if code == 2 || out.trim().is_empty() {
        return Err(format!("exit {code}: {err}"));
    }
    let v: serde_json::Value = serde_json::from_str(out.trim()).map_err(|e| format!("{e}: {out}"))?;
    Ok(Outcome {
        answers: v["answers"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect(),
        output: v["output"].as_str().unwrap().to_string(),
        halted: v["halted"].as_bool().unwrap(),
    })
}
