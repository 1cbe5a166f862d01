use std::fs::File;
use std::io::{self, BufWriter, Write};

use crate::{Cli, CliError};

/// Output file or stdout, opened with the self-describing header already
/// written. `command` is the full argument list that reproduces the file.
pub fn open(cli: &Cli, command: &str) -> Result<Box<dyn Write>, CliError> {
    let mut w: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    writeln!(w, "# ionlink {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# command: ionlink {command} --seed {}", cli.seed)?;
    writeln!(w, "# seed: {}", cli.seed)?;
    Ok(w)
}

/// Twelve significant digits.
pub fn sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}
