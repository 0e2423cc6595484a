//! `--config FILE` support: each `key=value` line becomes `--key value`,
//! inserted right after the subcommand so that flags typed on the command
//! line (which come later) override it.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::{ArgAction, CommandFactory};

use crate::args::Cli;
use crate::error::CliError;

/// Parses `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        pairs.push((key, v.trim().to_string()));
    }
    Ok(pairs)
}

/// Removes `--config` from `argv` and splices the file's settings in as flags.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut config_path: Option<OsString> = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        let text = arg.to_string_lossy();
        if text == "--config" {
            let path = iter.next().ok_or_else(|| CliError::Usage("--config needs a file path".into()))?;
            config_path = Some(path);
        } else if let Some(path) = text.strip_prefix("--config=") {
            config_path = Some(path.into());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config_path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let pairs = parse_config(&text)?;

    // Walk the subcommand chain to find where flags belong.
    let mut cmd = Cli::command();
    let mut insert_at = None;
    for (i, arg) in rest.iter().enumerate().skip(1) {
        let name = arg.to_string_lossy();
        match cmd.find_subcommand(name.as_ref()) {
            Some(sub) => {
                cmd = sub.clone();
                insert_at = Some(i + 1);
            }
            None if insert_at.is_some() => break,
            None => {}
        }
    }
    let insert_at = insert_at.ok_or_else(|| CliError::Usage("--config needs a subcommand".into()))?;

    let mut injected: Vec<OsString> = Vec::new();
    for (key, value) in pairs {
        let arg = cmd
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| CliError::Usage(format!("config key {key:?} is not a flag of `{}`", cmd.get_name())))?;
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            match value.as_str() {
                "true" | "1" | "yes" => injected.push(format!("--{key}").into()),
                "false" | "0" | "no" => {}
                _ => return Err(CliError::Usage(format!("config key {key:?} expects true or false"))),
            }
        } else {
            injected.push(format!("--{key}").into());
            injected.push(value.into());
        }
    }
    rest.splice(insert_at..insert_at, injected);
    Ok(rest)
}
