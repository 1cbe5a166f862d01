//! TOML config files, spliced into the argument list ahead of the flags
//! given on the command line so that explicit flags win.
//!
//! Top-level keys are global flags, tables named after a subcommand hold
//! that subcommand's flags:
//!
//! ```toml
//! seed = 7
//! [purify-sweep]
//! eps = "0.01:0.15:0.01"
//! levels = [1, 2, 3]
//! no-memory-swap = true
//! ```

use std::ffi::OsString;
use std::path::Path;

use toml::{Table, Value};

use crate::CliError;

fn scalar(key: &str, v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Integer(i) => Ok(i.to_string()),
        Value::Float(f) => Ok(f.to_string()),
        other => Err(CliError::Usage(format!("config key '{key}' has unsupported value {other}"))),
    }
}

fn flags(table: &Table, skip_tables: bool) -> Result<Vec<OsString>, CliError> {
    let mut out = Vec::new();
    for (key, value) in table {
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        let flag = format!("--{key}");
        match value {
            Value::Table(_) if skip_tables => {}
            Value::Boolean(true) => out.push(flag.into()),
            Value::Boolean(false) => {}
            Value::Array(items) => {
                let parts = items.iter().map(|v| scalar(key, v)).collect::<Result<Vec<_>, _>>()?;
                out.push(flag.into());
                out.push(parts.join(",").into());
            }
            v => {
                out.push(flag.into());
                out.push(scalar(key, v)?.into());
            }
        }
    }
    Ok(out)
}

/// Rewrites `args` (program name first) with the config values in front of
/// the user's own flags.
pub fn splice(args: &[OsString], path: &Path, subcommands: &[&str]) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let table: Table = toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
    let Some(at) = args.iter().position(|a| a.to_str().is_some_and(|s| subcommands.contains(&s))) else {
        return Ok(args.to_vec());
    };
    let name = args[at].to_str().expect("matched a subcommand name");
    for key in table.keys() {
        if matches!(table[key], Value::Table(_)) && !subcommands.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config section [{key}] is not a subcommand")));
        }
    }
    let mut out = vec![args[0].clone()];
    out.extend(flags(&table, true)?);
    out.extend_from_slice(&args[1..=at]);
    if let Some(Value::Table(section)) = table.get(name) {
        out.extend(flags(section, false)?);
    }
    out.extend_from_slice(&args[at + 1..]);
    Ok(out)
}
