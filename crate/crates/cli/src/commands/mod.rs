mod emit;
mod fidelity;
mod market;
mod walks;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use crate::args::{Command, MarketCommand};
use crate::error::CliError;

/// One finished output: a file, or standard output when `path` is `None`.
#[derive(Debug)]
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub content: String,
}

impl Artifact {
    pub fn new(path: Option<PathBuf>, content: String) -> Self {
        Self { path, content }
    }
}

pub fn run(command: Command) -> Result<Vec<Artifact>, CliError> {
    match command {
        Command::DistanceTable(a) => walks::distance_table(&a),
        Command::WalkHist(a) => walks::walk_hist(&a),
        Command::Zeno(a) => walks::zeno(&a),
        Command::Fidelity(a) => fidelity::fidelity(&a),
        Command::Market(MarketCommand::Returns(a)) => market::returns(&a),
        Command::Market(MarketCommand::Housing(a)) => market::housing(&a),
        Command::EmitCircuit(a) => emit::emit_circuit(&a),
    }
}

/// Writes every artifact. Files go through a sibling temporary file and a
/// rename so a failed write never leaves a truncated result behind.
pub fn publish(artifacts: &[Artifact]) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    for a in artifacts {
        match &a.path {
            None => stdout.write_all(a.content.as_bytes())?,
            Some(path) => {
                let mut tmp = path.clone().into_os_string();
                tmp.push(".partial");
                fs::write(&tmp, &a.content)
                    .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
                fs::rename(&tmp, path)?;
            }
        }
    }
    stdout.flush()?;
    Ok(())
}

fn csv_row<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut w = String::new();
    for (i, f) in fields.into_iter().enumerate() {
        if i > 0 {
            w.push(',');
        }
        let f = f.as_ref();
        if f.contains([',', '"', '\n']) {
            w.push('"');
            w.push_str(&f.replace('"', "\"\""));
            w.push('"');
        } else {
            w.push_str(f);
        }
    }
    w.push('\n');
    w
}
