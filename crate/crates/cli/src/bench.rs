//! Benchmark manifests and the timing table.
//!
//! A manifest has one benchmark per line:
//!
//! ```text
//! name  file  goal...  repetitions  expected-output-file
//! ```
//!
//! Fields are separated by whitespace; the goal is everything between the
//! file and the repetition count. Paths are relative to the manifest.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use anyhow::{bail, Context, Result};
use pljs::bundle::{bench_driver, bundle};
use pljs::codegen::Options;
use pljs::pipeline::compile_entry;

use crate::{engine, read_sources, HostFlags};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Benchmark {
    pub name: String,
    pub file: PathBuf,
    pub goal: String,
    pub reps: u64,
    pub expected: PathBuf,
}

pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<Benchmark>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 5 {
            bail!("manifest line {}: expected `name file goal repetitions expected`", i + 1);
        }
        let n = fields.len();
        let reps = fields[n - 2]
            .parse::<u64>()
            .ok()
            .filter(|&r| r > 0)
            .with_context(|| format!("manifest line {}: bad repetition count `{}`", i + 1, fields[n - 2]))?;
        out.push(Benchmark {
            name: fields[0].to_string(),
            file: base.join(fields[1]),
            goal: fields[2..n - 2].join(" "),
            reps,
            expected: base.join(fields[n - 1]),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Time(f64),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub label: String,
    pub outcome: Outcome,
    pub baseline: Option<f64>,
}

/// Row label: the name, with the repetition factor when it is not 1.
pub fn label(b: &Benchmark) -> String {
    if b.reps == 1 {
        b.name.clone()
    } else {
        format!("{} (x{})", b.name, b.reps)
    }
}

/// Splits driver output into program output and the `time_ms` trailer.
pub fn split_timing(stdout: &str) -> Option<(&str, f64)> {
    let body = stdout.strip_suffix('\n').unwrap_or(stdout);
    let (text, last) = match body.rfind('\n') {
        Some(i) => (&stdout[..i + 1], &body[i + 1..]),
        None => ("", body),
    };
    let ms = last.strip_prefix("time_ms ")?.trim().parse().ok()?;
    Some((text, ms))
}

pub fn table(rows: &[Row], with_ratio: bool) -> String {
    let mut header = vec!["Benchmark".to_string(), "time(ms)".to_string()];
    if with_ratio {
        header.push("Ratio".to_string());
    }
    let mut cells: Vec<Vec<String>> = vec![header];
    for r in rows {
        let mut line = vec![r.label.clone()];
        match &r.outcome {
            Outcome::Time(t) => {
                line.push(format!("{t:.2}"));
                if with_ratio {
                    line.push(match r.baseline {
                        Some(b) if b > 0.0 => format!("{:.2}", t / b),
                        _ => "-".to_string(),
                    });
                }
            }
            Outcome::Failed(_) => line.push("FAILED".to_string()),
        }
        cells.push(line);
    }
    let cols = cells[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| cells.iter().filter_map(|l| l.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, line) in cells.iter().enumerate() {
        let mut text = String::new();
        for (c, cell) in line.iter().enumerate() {
            if c == 0 {
                let _ = write!(text, "{cell:<w$}", w = widths[0]);
            } else {
                let _ = write!(text, "  {cell:>w$}", w = widths[c]);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
        if i == 0 {
            out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * (cols - 1)));
            out.push('\n');
        }
    }
    out
}

/// Compiles and times one benchmark under the host engine.
pub fn measure(b: &Benchmark, opts: Options, host: &HostFlags) -> Result<Outcome> {
    let sources = read_sources(std::slice::from_ref(&b.file))?;
    let (c, e) = match compile_entry(&sources, &b.goal, opts) {
        Ok(x) => x,
        Err(e) => return Ok(Outcome::Failed(e)),
    };
    let script = bundle(&host.preamble()?, &c, &bench_driver(&e.module, &e.names, b.reps));
    let run = engine::run_script(&host.engine, &script, false)?;
    if run.code != 0 {
        return Ok(Outcome::Failed(format!("exit {}: {}", run.code, run.stderr.trim())));
    }
    let Some((text, ms)) = split_timing(&run.stdout) else {
        return Ok(Outcome::Failed("no timing line in output".to_string()));
    };
    let expected = fs::read_to_string(&b.expected).with_context(|| format!("reading {}", b.expected.display()))?;
    if text != expected {
        return Ok(Outcome::Failed("wrong output".to_string()));
    }
    Ok(Outcome::Time(ms))
}

/// Runs `CMD FILE GOAL REPS` through the shell; the last line of its output
/// is the elapsed time in milliseconds.
pub fn baseline_time(cmd: &str, b: &Benchmark) -> Option<f64> {
    let line = format!("{cmd} {} {} {}", shell_quote(&b.file.display().to_string()), shell_quote(&b.goal), b.reps);
    let out = Command::new("sh").arg("-c").arg(&line).output().ok()?;
    if !out.status.success() {
        return None;
    }
    String::from_utf8_lossy(&out.stdout).lines().last()?.trim().parse().ok()
}

fn shell_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "'\\''"))
}

pub fn bench(manifest: &Path, baseline: Option<&str>, opts: Options, host: &HostFlags) -> Result<ExitCode> {
    let text = fs::read_to_string(manifest).with_context(|| format!("reading {}", manifest.display()))?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let benches = parse_manifest(&text, base)?;
    let mut rows = Vec::new();
    for b in &benches {
        let outcome = measure(b, opts, host)?;
        if let Outcome::Failed(why) = &outcome {
            eprintln!("{}: FAILED: {why}", b.name);
        }
        let baseline = match (&outcome, baseline) {
            (Outcome::Time(_), Some(cmd)) => baseline_time(cmd, b),
            _ => None,
        };
        rows.push(Row {
            label: label(b),
            outcome,
            baseline,
        });
    }
    print!("{}", table(&rows, baseline.is_some()));
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let m = "# comment\n\nqsort qsort.pl qsort_bench 1000 qsort.out\nq q.pl p(X), q(X) 10 q.out\n";
        let bs = parse_manifest(m, Path::new("b")).unwrap();
        assert_eq!(bs.len(), 2);
        assert_eq!(bs[0].file, PathBuf::from("b/qsort.pl"));
        assert_eq!(bs[1].goal, "p(X), q(X)");
        assert_eq!(bs[1].reps, 10);
        assert_eq!(label(&bs[0]), "qsort (x1000)");
        assert!(parse_manifest("a b c 0 d\n", Path::new(".")).is_err());
        assert!(parse_manifest("a b c\n", Path::new(".")).is_err());
    }

    #[test]
    fn timing_trailer() {
        assert_eq!(split_timing("X = 1\ntime_ms 12.5\n"), Some(("X = 1\n", 12.5)));
        assert_eq!(split_timing("time_ms 3\n"), Some(("", 3.0)));
        assert_eq!(split_timing("oops\n"), None);
    }

    #[test]
    fn table_layout() {
        let rows = vec![
            Row { label: "tak (x10)".into(), outcome: Outcome::Time(149.0), baseline: Some(55.7) },
            Row { label: "boyer".into(), outcome: Outcome::Failed("x".into()), baseline: None },
        ];
        let t = table(&rows, true);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "Benchmark  time(ms)  Ratio");
        assert!(lines[2].starts_with("tak (x10)") && lines[2].ends_with("149.00   2.68"));
        assert!(lines[3].ends_with("FAILED"));
        assert_eq!(table(&[], false), "Benchmark  time(ms)\n-------------------\n");
    }
}
