//! `audit bound`: the state-complexity lower-bound audit.

use std::path::PathBuf;

use clap::{Args, Subcommand};

use qcm_core::complexity::audit_lower_bound;
use qcm_core::qfa::wire::AnyMachine;

use crate::io::{emit, load_dfa, load_machine, to_pretty_json, CliResult, Failure};

#[derive(Subcommand)]
pub enum AuditCmd {
    /// Check the class-count bound and the cross-class distance property
    Bound(BoundArgs),
}

#[derive(Args)]
pub struct BoundArgs {
    /// Hybrid machine document (qfac)
    qfac: PathBuf,
    /// Reference language (DFA document)
    dfa: PathBuf,
    /// Two-sided acceptance margin around the threshold
    #[arg(long)]
    eps: f64,
    /// Acceptance threshold; defaults to the machine's metadata, then 1/2
    #[arg(long)]
    lambda: Option<f64>,
    /// Write the JSON report to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also print one CSV row
    #[arg(long)]
    csv: bool,
}

pub fn run(cmd: AuditCmd) -> CliResult<()> {
    let AuditCmd::Bound(args) = cmd;
    let AnyMachine::Qfac(machine) = load_machine(&args.qfac)? else {
        return Err(Failure::Malformed("the machine must be a qfac document".into()));
    };
    let reference = load_dfa(&args.dfa)?;
    let report = audit_lower_bound(&machine, &reference, args.eps, args.lambda)
        .map_err(Failure::domain)?;
    emit(args.out.as_ref(), &to_pretty_json(&report))?;
    if args.csv {
        println!("{}", qcm_core::complexity::AuditReport::csv_header());
        println!("{}", report.csv_row());
    }
    Ok(())
}
