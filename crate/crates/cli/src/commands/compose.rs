//! `compose`: classical/quantum product machine under a set operation.

use std::path::PathBuf;

use clap::Args;

use qcm_core::constructions::{compose_setop, SetOp};
use qcm_core::qfa::wire::{AnyMachine, MachineDoc};

use crate::io::{emit, load_dfa, load_machine, to_pretty_json, CliResult, Failure};

#[derive(Args)]
pub struct ComposeArgs {
    /// intersect | union | diff-dm | diff-md
    #[arg(long)]
    op: String,
    /// Classical factor (DFA document)
    dfa: PathBuf,
    /// Quantum factor (measure-once machine document)
    mo: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: ComposeArgs) -> CliResult<()> {
    let op = SetOp::parse(&args.op).ok_or_else(|| {
        Failure::Malformed(format!(
            "unknown operation {:?}; expected intersect, union, diff-dm or diff-md",
            args.op
        ))
    })?;
    let d = load_dfa(&args.dfa)?;
    let AnyMachine::Mo(mo) = load_machine(&args.mo)? else {
        return Err(Failure::Malformed(
            "the quantum factor must be a mo1qfa document".into(),
        ));
    };
    let q = compose_setop(&d, &mo, op).map_err(Failure::domain)?;
    emit(args.out.as_ref(), &to_pretty_json(&MachineDoc::from(&q)))
}
