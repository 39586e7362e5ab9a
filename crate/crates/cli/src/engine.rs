//! Host engine processes.

use std::io::{ErrorKind, Write};
use std::process::{Command, Stdio};

use anyhow::{anyhow, Context, Result};

pub const DEFAULT_ENGINE: &str = "node";

pub struct Finished {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `script` with `engine`. With `inherit`, output goes straight to this
/// process's stdout and stderr instead of being captured.
pub fn run_script(engine: &str, script: &str, inherit: bool) -> Result<Finished> {
    let mut file = tempfile::Builder::new()
        .prefix("pljs-")
        .suffix(".js")
        .tempfile()
        .context("creating bundle file")?;
    file.write_all(script.as_bytes()).context("writing bundle file")?;
    file.flush()?;
    let mut cmd = Command::new(engine);
    cmd.arg(file.path()).stdin(Stdio::null());
    let not_found = |e: std::io::Error| -> anyhow::Error {
        if e.kind() == ErrorKind::NotFound {
            anyhow!("host engine `{engine}` not found; install Node.js (`node`) or pass --engine PATH")
        } else {
            anyhow!(e).context(format!("starting host engine `{engine}`"))
        }
    };
    if inherit {
        let status = cmd.status().map_err(not_found)?;
        return Ok(Finished {
            code: status.code().unwrap_or(2),
            stdout: String::new(),
            stderr: String::new(),
        });
    }
    let out = cmd.output().map_err(not_found)?;
    Ok(Finished {
        code: out.status.code().unwrap_or(2),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    })
}
