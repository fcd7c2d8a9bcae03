//! `dcq run|decide|trace|encode|universal`.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use qcm_core::dcq::{
    bits, decide, program_input_word, run as dcq_run, run_with_trace, DcqMachine, DcqMachineDoc,
    DecideOutcome, RunOutcome, SimLimits, Verdict, DEFAULT_WINDOW_CAP,
};
use qcm_core::linalg::StateVector;
use qcm_core::smn::{emulate, EncodedMachine, UniversalOutcome};

use crate::io::{load_json, load_state, num, state_doc, to_pretty_json, CliResult, Failure};

#[derive(Subcommand)]
pub enum DcqCmd {
    /// Run on a classical input (optionally with a quantum input state)
    Run(RunArgs),
    /// Run and measure the first output qubit against the 2/3 threshold
    Decide(DecideArgs),
    /// Run and dump the classical execution trace as TSV
    Trace(RunArgs),
    /// Print the translated program bits for the machine
    Encode(EncodeArgs),
    /// Emulate through the universal interpreter and compare both paths
    Universal(UniversalArgs),
}

#[derive(Args)]
pub struct RunArgs {
    machine: PathBuf,
    /// Classical input bits
    #[arg(long, default_value = "")]
    x: String,
    /// Quantum input state document
    #[arg(long)]
    qin: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    /// Quantum window size cap, in qubits
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP)]
    cap: usize,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
pub struct DecideArgs {
    machine: PathBuf,
    #[arg(long, default_value = "")]
    x: String,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP)]
    cap: usize,
}

#[derive(Args)]
pub struct EncodeArgs {
    machine: PathBuf,
    /// Program to translate; empty for the bare table prefix
    #[arg(long, default_value = "")]
    p: String,
}

#[derive(Args)]
pub struct UniversalArgs {
    machine: PathBuf,
    #[arg(long, default_value = "")]
    p: String,
    #[arg(long, default_value = "")]
    x: String,
    #[arg(long)]
    qin: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW_CAP)]
    cap: usize,
}

fn load_dcq(path: &PathBuf) -> CliResult<DcqMachine> {
    let doc: DcqMachineDoc = load_json(path)?;
    DcqMachine::try_from(doc).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn quantum_input(qin: Option<&PathBuf>) -> CliResult<StateVector> {
    match qin {
        Some(path) => load_state(path),
        None => Ok(StateVector::scalar_one()),
    }
}

pub fn run(cmd: DcqCmd) -> CliResult<()> {
    match cmd {
        DcqCmd::Run(args) => run_machine(args, false),
        DcqCmd::Trace(args) => run_machine(args, true),
        DcqCmd::Decide(args) => run_decide(args),
        DcqCmd::Encode(args) => {
            let m = load_dcq(&args.machine)?;
            let em = EncodedMachine::new(&m);
            println!("{}", em.translate(&args.p).map_err(Failure::domain)?);
            Ok(())
        }
        DcqCmd::Universal(args) => run_universal(args),
    }
}

fn run_machine(args: RunArgs, trace: bool) -> CliResult<()> {
    let m = load_dcq(&args.machine)?;
    let input = bits(&args.x).map_err(Failure::malformed)?;
    let psi = quantum_input(args.qin.as_ref())?;
    let limits = SimLimits {
        max_steps: args.budget,
        max_window_qubits: args.cap,
    };
    let (outcome, lines) =
        run_with_trace(&m, &input, &psi, limits, trace).map_err(Failure::domain)?;
    for line in &lines {
        println!("{}", line.tsv());
    }
    match outcome {
        RunOutcome::Halted(out) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "y": out.classical,
                        "steps": out.steps,
                        "quantum_qubits": out.quantum_qubits,
                        "quantum": state_doc(&out.quantum).amplitudes,
                    })
                );
            } else {
                println!("y = {:?}", out.classical);
                println!("steps = {}", out.steps);
                println!("quantum qubits = {}", out.quantum_qubits);
                for (i, amp) in out.quantum.amplitudes().iter().enumerate() {
                    if amp.norm() > 1e-12 {
                        println!(
                            "  |{:0width$b}>  {} + {}i",
                            i,
                            num(amp.re),
                            num(amp.im),
                            width = out.quantum_qubits.max(1)
                        );
                    }
                }
            }
        }
        RunOutcome::BudgetExceeded(cfg) => {
            println!("budget exceeded after {} steps", cfg.steps());
        }
    }
    Ok(())
}

fn run_decide(args: DecideArgs) -> CliResult<()> {
    let m = load_dcq(&args.machine)?;
    let input = bits(&args.x).map_err(Failure::malformed)?;
    let limits = SimLimits {
        max_steps: args.budget,
        max_window_qubits: args.cap,
    };
    match decide(&m, &input, limits).map_err(Failure::domain)? {
        DecideOutcome::Decided(d) => {
            let verdict = match d.verdict {
                Verdict::Accept => "accept",
                Verdict::Reject => "reject",
                Verdict::Inconclusive => "inconclusive",
            };
            println!("p1 = {}", num(d.p_one));
            println!("{verdict}");
        }
        DecideOutcome::BudgetExceeded => println!("budget exceeded"),
    }
    Ok(())
}

fn run_universal(args: UniversalArgs) -> CliResult<()> {
    let m = load_dcq(&args.machine)?;
    let p = bits(&args.p).map_err(Failure::malformed)?;
    let x = bits(&args.x).map_err(Failure::malformed)?;
    let psi = quantum_input(args.qin.as_ref())?;
    let limits = SimLimits {
        max_steps: args.budget,
        max_window_qubits: args.cap,
    };
    let word = program_input_word(&p, &x);
    let direct = dcq_run(&m, &word, &psi, limits).map_err(Failure::domain)?;
    let emulated = emulate(&m, &args.p, &args.x, &psi, limits, false).map_err(Failure::domain)?;
    match (direct, emulated) {
        (RunOutcome::Halted(d), UniversalOutcome::Halted(e)) => {
            println!("direct:    y = {:?}, steps = {}", d.classical, d.steps);
            println!(
                "universal: y = {:?}, machine steps = {}, interpreter steps = {}",
                e.output.classical, e.m_steps, e.t_steps
            );
            let agree = e.output.matches(&d, 1e-10);
            println!(
                "outputs {} (quantum distance {:.3e})",
                if agree { "agree" } else { "DISAGREE" },
                e.output.quantum.distance(&d.quantum)
            );
            if !agree {
                return Err(Failure::Domain(
                    "universal emulation diverged from the direct run".into(),
                ));
            }
            println!("{}", to_pretty_json(&state_doc(&e.output.quantum)));
        }
        (RunOutcome::BudgetExceeded(_), UniversalOutcome::BudgetExceeded { .. }) => {
            println!("both paths exceeded the budget");
        }
        _ => {
            return Err(Failure::Domain(
                "one path halted while the other exceeded the budget".into(),
            ));
        }
    }
    Ok(())
}
