mod basic;
mod heis;
mod su2;
mod torus;
mod weyl;

use sharphy::euclidean::GridSpec;
use sharphy::error::Warning;

use crate::args::{Cli, Command, Global};
use crate::record::ResultRecord;
use crate::{CliError, CliResult};

pub fn dispatch(cli: &Cli, rec: &mut ResultRecord) -> CliResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Bb { p } => basic::bb(*p, rec),
        Command::Young { p, n } => basic::young(p, *n, rec),
        Command::Euclid { action } => basic::euclid(g, action, rec),
        Command::Weyl { action } => weyl::run(g, action, rec),
        Command::Heis { action } => heis::run(g, action, rec),
        Command::Torus { action } => torus::run(g, action, rec),
        Command::Su2 { action } => su2::run(g, action, rec),
    }
}

/// The grid from `--grid-r`/`--grid-n`, each falling back to `default`.
fn grid(g: &Global, default: GridSpec) -> CliResult<GridSpec> {
    Ok(GridSpec::new(
        g.grid_r.unwrap_or(default.half_width()),
        g.grid_n.unwrap_or(default.points()),
    )?)
}

fn warnings(rec: &mut ResultRecord, ws: &[Warning]) {
    for w in ws {
        rec.diagnostic(w);
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// Relative difference, exact zero when both vanish.
fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}
