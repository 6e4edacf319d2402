//! Library behind the `topo` binary.
//!
//! ```text
//! topo chern-bulk --model models/qwz_u-1.toml --grid 32
//! topo verify theorem1 --model models/qwz_u-1.toml --delta 0.01
//! topo verify theorem2 --model models/scattering_qwz_u-1.toml
//! topo verify properties --seed 42
//! topo sweep delta --values 0.001,0.01,0.1 --model models/qwz_u-1.toml
//! ```
//!
//! Every command writes CSV: `# key = value` metadata lines carrying the
//! full configuration, one header line, then rows. Exit codes: 0 success,
//! 1 usage error, 2 model or gap error, 3 convergence error or failed
//! verification.

mod args;
mod commands;
mod config;
mod csv;
mod error;
pub mod properties;
mod report;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Common, SweepKind, VerifyKind};
pub use commands::{chern_bulk, sweep, verify, Outcome, SWEEP_HEADER};
pub use config::{Setup, DEFAULT_EXP_STRIP};
pub use csv::CsvTable;
pub use error::{CliError, EXIT_CONVERGENCE, EXIT_MODEL, EXIT_OK, EXIT_USAGE};
pub use report::{Assertion, ASSERTION_HEADER};

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::ChernBulk(c) => {
            config::validate(c)?;
            chern_bulk(c)
        }
        Command::Verify { which, common } => {
            config::validate(common)?;
            verify(*which, common)
        }
        Command::Sweep { vary, values, common } => {
            config::validate(common)?;
            sweep(*vary, values, common)
        }
    }
}

fn common(cli: &Cli) -> &Common {
    match &cli.command {
        Command::ChernBulk(c) => c,
        Command::Verify { common, .. } | Command::Sweep { common, .. } => common,
    }
}

fn emit(outcome: &Outcome, c: &Common, out: &mut dyn Write) -> Result<(), CliError> {
    match &c.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            outcome.table.write_to(&mut w)?;
            w.flush()?;
        }
        None => outcome.table.write_to(out)?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let c = common(&cli);
    let result = match c.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {jobs} workers: {e}"))),
        },
        None => execute(&cli),
    };
    match result.and_then(|o| emit(&o, c, out).map(|_| o.exit_code)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "topo: {e}");
            e.exit_code()
        }
    }
}
