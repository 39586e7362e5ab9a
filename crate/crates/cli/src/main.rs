mod bench;
mod engine;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use pljs::bundle::{bundle, run_driver, Report};
use pljs::codegen::Options;
use pljs::pipeline::{compile_entry, compile_sources, Compiled};

/// Name of the loader manifest written next to the emitted modules.
pub const LOADER: &str = "load_order.txt";

#[derive(Parser)]
#[command(name = "pljs", version, about = "Compile module-structured Prolog to JavaScript")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile source files to one JavaScript file per module.
    Compile {
        files: Vec<PathBuf>,
        /// Output directory (default: current directory).
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
        /// Print the chunk IR of every predicate.
        #[arg(long)]
        dump_ir: bool,
        #[command(flatten)]
        flags: CompileFlags,
    },
    /// Compile and run a goal under the host engine.
    Run {
        files: Vec<PathBuf>,
        /// Goal to solve, `Module:Goal` or a goal in the first module.
        #[arg(long, default_value = "main")]
        entry: String,
        #[command(flatten)]
        flags: CompileFlags,
        #[command(flatten)]
        host: HostFlags,
    },
    /// Run a benchmark manifest and print the timing table.
    Bench {
        manifest: PathBuf,
        /// External command giving baseline times; enables the Ratio column.
        #[arg(long)]
        baseline: Option<String>,
        #[command(flatten)]
        flags: CompileFlags,
        #[command(flatten)]
        host: HostFlags,
    },
}

#[derive(Args, Clone, Copy)]
struct CompileFlags {
    /// Disable first-argument indexing.
    #[arg(long)]
    no_index: bool,
}

impl CompileFlags {
    fn options(self) -> Options {
        Options { index: !self.no_index }
    }
}

#[derive(Args, Clone)]
pub struct HostFlags {
    /// Host engine executable.
    #[arg(long, default_value = engine::DEFAULT_ENGINE)]
    engine: String,
    /// Runtime script loaded before the emitted modules.
    #[arg(long, env = "PLJS_RUNTIME")]
    runtime: Option<PathBuf>,
    /// Script loaded before the runtime (host objects, stubs).
    #[arg(long)]
    prelude: Option<PathBuf>,
}

impl HostFlags {
    /// Runtime and prelude text, in load order.
    pub fn preamble(&self) -> Result<String> {
        let mut out = String::new();
        if let Some(p) = &self.prelude {
            out.push_str(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?);
            out.push('\n');
        }
        match &self.runtime {
            Some(p) => out.push_str(&fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?),
            None => out.push_str(pljs::bundle::RUNTIME_JS),
        }
        Ok(out)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.cmd {
        Cmd::Compile { files, out, dump_ir, flags } => compile(&files, out.as_deref(), dump_ir, flags),
        Cmd::Run { files, entry, flags, host } => run(&files, &entry, flags, &host),
        Cmd::Bench { manifest, baseline, flags, host } => bench::bench(&manifest, baseline.as_deref(), flags.options(), &host),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn read_sources(files: &[PathBuf]) -> Result<Vec<(String, String)>> {
    files
        .iter()
        .map(|f| {
            let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
            Ok((f.display().to_string(), text))
        })
        .collect()
}

fn report_warnings(c: &Compiled) {
    for w in &c.warnings {
        eprintln!("{w}");
    }
}

fn compile(files: &[PathBuf], out: Option<&Path>, dump_ir: bool, flags: CompileFlags) -> Result<ExitCode> {
    if files.is_empty() {
        anyhow::bail!("no input files");
    }
    let sources = read_sources(files)?;
    let c = compile_sources(&sources, flags.options()).map_err(anyhow::Error::msg)?;
    report_warnings(&c);
    if dump_ir {
        print!("{}", c.ir_dump());
    }
    if dump_ir && out.is_none() {
        return Ok(ExitCode::SUCCESS);
    }
    write_outputs(&c, out.unwrap_or(Path::new(".")))?;
    Ok(ExitCode::SUCCESS)
}

/// Writes every module plus the loader manifest. Files are staged under
/// temporary names and renamed once all of them are written, so a failed
/// write leaves no outputs behind.
fn write_outputs(c: &Compiled, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files: Vec<(String, String)> = c.modules.iter().map(|m| (m.file.clone(), m.source.clone())).collect();
    files.push((LOADER.to_string(), c.load_order.iter().map(|f| format!("{f}\n")).collect()));
    let mut staged = Vec::new();
    let r = (|| -> Result<()> {
        for (name, text) in &files {
            let tmp = dir.join(format!(".{name}.tmp"));
            staged.push(tmp.clone());
            fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
        }
        Ok(())
    })();
    if let Err(e) = r {
        for t in &staged {
            let _ = fs::remove_file(t);
        }
        return Err(e);
    }
    for ((name, _), tmp) in files.iter().zip(&staged) {
        fs::rename(tmp, dir.join(name)).with_context(|| format!("writing {name}"))?;
    }
    Ok(())
}

fn run(files: &[PathBuf], entry: &str, flags: CompileFlags, host: &HostFlags) -> Result<ExitCode> {
    let sources = read_sources(files)?;
    let (c, e) = compile_entry(&sources, entry, flags.options()).map_err(anyhow::Error::msg)?;
    report_warnings(&c);
    let script = bundle(&host.preamble()?, &c, &run_driver(&e.module, &e.names, Report::Text, usize::MAX >> 11));
    let code = engine::run_script(&host.engine, &script, true)?.code;
    Ok(ExitCode::from(match code {
        0 | 1 => code as u8,
        _ => 2,
    }))
}
