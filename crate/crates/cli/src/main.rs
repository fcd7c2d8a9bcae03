//! Command-line workbench: run the automaton models, build the language
//! families and machine constructions, execute the structural detectors
//! and the state-complexity audit, and drive the deterministic-control
//! machine together with its universal emulation.

mod commands;
mod io;

use clap::{Parser, Subcommand};

use crate::io::Failure;

#[derive(Parser)]
#[command(
    name = "qcm",
    version,
    about = "Workbench for quantum automata and machines with classical control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate quantum finite automata on words
    #[command(subcommand)]
    Qfa(commands::qfa::QfaCmd),
    /// Minimize and analyze deterministic finite automata
    #[command(subcommand)]
    Dfa(commands::dfa::DfaCmd),
    /// Build the language families and machine constructions
    #[command(subcommand)]
    Build(commands::build::BuildCmd),
    /// Product of a DFA and a measure-once automaton under a set operation
    Compose(commands::compose::ComposeArgs),
    /// State-complexity audits
    #[command(subcommand)]
    Audit(commands::audit::AuditCmd),
    /// Deterministic-control machine: run, decide, trace, encode, emulate
    #[command(subcommand)]
    Dcq(commands::dcq::DcqCmd),
    /// Batch experiments emitting tables
    #[command(subcommand)]
    Experiment(commands::experiment::ExperimentCmd),
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Qfa(c) => commands::qfa::run(c),
        Command::Dfa(c) => commands::dfa::run(c),
        Command::Build(c) => commands::build::run(c),
        Command::Compose(c) => commands::compose::run(c),
        Command::Audit(c) => commands::audit::run(c),
        Command::Dcq(c) => commands::dcq::run(c),
        Command::Experiment(c) => commands::experiment::run(c),
    }
}

fn main() {
    // Die quietly when stdout is closed early (e.g. piped into head).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            std::process::exit(failure.exit_code());
        }
    }
}
