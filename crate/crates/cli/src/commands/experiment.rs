//! `experiment state-complexity`: the modulus sweep table.

use std::path::PathBuf;

use clap::{Args, Subcommand};

use qcm_core::experiment::{state_complexity, StateComplexityRow};

use crate::io::{emit, num, CliResult, Failure};

#[derive(Subcommand)]
pub enum ExperimentCmd {
    /// Minimal-DFA size vs rotation-acceptor state counts per modulus
    StateComplexity(StateComplexityArgs),
}

#[derive(Args)]
pub struct StateComplexityArgs {
    /// Comma-separated list of prime moduli, e.g. 7,11,13
    #[arg(long, value_delimiter = ',')]
    m: Vec<u64>,
    /// One-sided error target (also used as the audit margin)
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the table as CSV to this file
    #[arg(long)]
    csv: Option<PathBuf>,
}

pub fn run(cmd: ExperimentCmd) -> CliResult<()> {
    let ExperimentCmd::StateComplexity(args) = cmd;
    if args.m.is_empty() {
        return Err(Failure::Malformed("at least one modulus is required".into()));
    }
    let rows = state_complexity(&args.m, args.eps, args.seed).map_err(Failure::domain)?;
    let mut csv = vec![StateComplexityRow::csv_header().to_string()];
    for row in &rows {
        csv.push(row.csv_row());
    }
    match &args.csv {
        Some(path) => {
            emit(Some(path), &csv.join("\n"))?;
            print_table(&rows);
        }
        None => print_table(&rows),
    }
    Ok(())
}

fn print_table(rows: &[StateComplexityRow]) {
    println!(
        "{:>5} {:>10} {:>14} {:>12} {:>16} {:>11}",
        "m", "dfa_states", "qfac_classical", "qfac_quantum", "achieved_eps", "bound_holds"
    );
    for r in rows {
        println!(
            "{:>5} {:>10} {:>14} {:>12} {:>16} {:>11}",
            r.m,
            r.dfa_states,
            r.qfac_classical,
            r.qfac_quantum,
            num(r.achieved_eps),
            r.bound_holds
        );
    }
}
