//! `build l0m|lm|lzm|l0|qfac-l0m|qfac-lzm`: language families and the
//! compact rotation acceptors, emitted as machine documents.

use std::path::PathBuf;

use clap::{Args, Subcommand};

use qcm_core::constructions::{l0m_acceptor, lzm_acceptor};
use qcm_core::dfa::{languages, Dfa, DfaDoc};
use qcm_core::qfa::wire::MachineDoc;

use crate::io::{emit, to_pretty_json, CliResult, Failure};

#[derive(Subcommand)]
pub enum BuildCmd {
    /// Words ending in 0 with length a positive multiple of m
    L0m(ModArgs),
    /// Words with length a positive multiple of m
    Lm(ModArgs),
    /// Words containing z as a subsequence, length a positive multiple of m
    Lzm(LzmArgs),
    /// Words ending in 0
    L0(OutOnly),
    /// Two-classical-state rotation acceptor for the l0m language
    QfacL0m(AcceptorArgs),
    /// (|z|+1)-classical-state rotation acceptor for the lzm language
    QfacLzm(LzmAcceptorArgs),
}

#[derive(Args)]
pub struct ModArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct LzmArgs {
    #[arg(long)]
    z: String,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct OutOnly {
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct AcceptorArgs {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct LzmAcceptorArgs {
    #[arg(long)]
    z: String,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    eps: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit_dfa(d: &Dfa, out: Option<&PathBuf>) -> CliResult<()> {
    emit(out, &to_pretty_json(&DfaDoc::from(d)))
}

pub fn run(cmd: BuildCmd) -> CliResult<()> {
    match cmd {
        BuildCmd::L0m(a) => {
            let d = languages::l0m(a.m).map_err(Failure::domain)?;
            emit_dfa(&d, a.out.as_ref())
        }
        BuildCmd::Lm(a) => {
            let d = languages::lm(a.m).map_err(Failure::domain)?;
            emit_dfa(&d, a.out.as_ref())
        }
        BuildCmd::Lzm(a) => {
            let d = languages::lzm(&a.z, a.m).map_err(Failure::domain)?;
            emit_dfa(&d, a.out.as_ref())
        }
        BuildCmd::L0(a) => emit_dfa(&languages::l0(), a.out.as_ref()),
        BuildCmd::QfacL0m(a) => {
            let q = l0m_acceptor(a.m, a.eps, a.seed).map_err(Failure::domain)?;
            emit(a.out.as_ref(), &to_pretty_json(&MachineDoc::from(&q)))
        }
        BuildCmd::QfacLzm(a) => {
            let q = lzm_acceptor(&a.z, a.m, a.eps, a.seed).map_err(Failure::domain)?;
            emit(a.out.as_ref(), &to_pretty_json(&MachineDoc::from(&q)))
        }
    }
}
