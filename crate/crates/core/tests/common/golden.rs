//! The five-module golden fixture.

use std::fs;
use std::path::PathBuf;

use pljs::codegen::Options;
use pljs::pipeline::{compile_sources, Compiled};
use pljs::reader::read_module;

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/golden")
}

pub fn sources() -> Vec<(String, String)> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir().join("src"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "pl"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&p).unwrap()))
        .collect()
}

pub fn compile() -> Compiled {
    compile_sources(&sources(), Options::default()).unwrap()
}

/// Emitted files plus the loader manifest, as (name, text).
pub fn outputs(c: &Compiled) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = c.modules.iter().map(|m| (m.file.clone(), m.source.clone())).collect();
    out.push(("load_order.txt".to_string(), c.load_order.iter().map(|f| format!("{f}\n")).collect()));
    out
}

/// Compares outputs with the stored goldens; `PLJS_BLESS` rewrites them.
/// Returns the names of files that differ or are missing.
pub fn check_goldens(c: &Compiled) -> Vec<String> {
    let expected = dir().join("expected");
    let outs = outputs(c);
    if std::env::var_os("PLJS_BLESS").is_some() {
        let _ = fs::remove_dir_all(&expected);
        fs::create_dir_all(&expected).unwrap();
        for (n, t) in &outs {
            fs::write(expected.join(n), t).unwrap();
        }
    }
    compare_goldens(c)
}

/// Compares outputs with the stored goldens without rewriting them.
pub fn compare_goldens(c: &Compiled) -> Vec<String> {
    let expected = dir().join("expected");
    let outs = outputs(c);
    let mut bad = Vec::new();
    for (n, t) in &outs {
        if fs::read_to_string(expected.join(n)).ok().as_deref() != Some(t.as_str()) {
            bad.push(n.clone());
        }
    }
    let stored = fs::read_dir(&expected).map(|d| d.count()).unwrap_or(0);
    if stored != outs.len() {
        bad.push(format!("{stored} stored files, {} emitted", outs.len()));
    }
    bad
}

/// Verbatim foreign function bodies of the fixture; they are user code and
/// not subject to the ABI scan.
pub fn foreign_bodies() -> Vec<String> {
    let mut out = Vec::new();
    for (_, src) in sources() {
        let (m, _) = read_module(&src).unwrap();
        out.extend(m.foreign_decls.iter().map(|d| d.body.clone()));
        for c in &m.foreign_classes {
            out.extend(c.methods.iter().map(|d| d.body.clone()));
        }
    }
    out
}

/// Emitted text with foreign bodies removed.
pub fn generated_code(src: &str) -> String {
    let mut s = src.to_string();
    for b in foreign_bodies() {
        s = s.replace(&format!("\n{b}\n"), "\n");
    }
    s
}
