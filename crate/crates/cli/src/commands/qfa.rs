//! `qfa run` and `qfa sweep`.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::json;

use qcm_core::qfa::wire::AnyMachine;
use qcm_core::qfa::ACCEPT;

use crate::io::{emit, load_machine, num, CliResult, Failure};

#[derive(Subcommand)]
pub enum QfaCmd {
    /// Evaluate one word and print the outcome probabilities
    Run(RunArgs),
    /// Evaluate every word up to a length bound
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Mo1qfa,
    Mm1qfa,
    Kletter,
    Qfacl,
    Qfac,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            ModelKind::Mo1qfa => "mo1qfa",
            ModelKind::Mm1qfa => "mm1qfa",
            ModelKind::Kletter => "kletter",
            ModelKind::Qfacl => "qfacl",
            ModelKind::Qfac => "qfac",
        }
    }
}

#[derive(Args)]
pub struct RunArgs {
    /// Expected model of the machine document
    #[arg(long, value_enum)]
    model: ModelKind,
    /// Machine document (JSON)
    machine: PathBuf,
    /// Input word, one symbol per character
    #[arg(long)]
    input: String,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Machine document (JSON)
    machine: PathBuf,
    /// Maximum word length
    #[arg(long)]
    maxlen: usize,
    /// Write rows as CSV to this file instead of stdout
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn check_model(machine: &AnyMachine, expected: ModelKind) -> CliResult<()> {
    if machine.model_name() != expected.name() {
        return Err(Failure::Malformed(format!(
            "document holds a {} machine, expected {}",
            machine.model_name(),
            expected.name()
        )));
    }
    Ok(())
}

pub fn run(cmd: QfaCmd) -> CliResult<()> {
    match cmd {
        QfaCmd::Run(args) => run_word(args),
        QfaCmd::Sweep(args) => sweep(args),
    }
}

fn run_word(args: RunArgs) -> CliResult<()> {
    let machine = load_machine(&args.machine)?;
    check_model(&machine, args.model)?;
    let word = args.input.as_str();
    match machine {
        AnyMachine::Mo(m) => {
            let p = m.accept_prob(word).map_err(Failure::domain)?;
            if args.json {
                println!("{}", json!({"model": "mo1qfa", "word": word, "p_accept": p}));
            } else {
                println!("{}", num(p));
            }
        }
        AnyMachine::KLetter(m) => {
            let p = m.accept_prob(word).map_err(Failure::domain)?;
            if args.json {
                println!("{}", json!({"model": "kletter", "word": word, "p_accept": p}));
            } else {
                println!("{}", num(p));
            }
        }
        AnyMachine::Cl(m) => {
            let p = m.accept_prob(word).map_err(Failure::domain)?;
            if args.json {
                println!("{}", json!({"model": "qfacl", "word": word, "p_accept": p}));
            } else {
                println!("{}", num(p));
            }
        }
        AnyMachine::Mm(m) => {
            let out = m.run(word).map_err(Failure::domain)?;
            let leftover = out.history.last().map_or(0.0, |s| s.nonhalting_mass);
            if args.json {
                println!(
                    "{}",
                    json!({
                        "model": "mm1qfa",
                        "word": word,
                        "p_accept": out.p_accept,
                        "p_reject": out.p_reject,
                        "p_nonhalting": leftover,
                    })
                );
            } else {
                println!("accept {}", num(out.p_accept));
                println!("reject {}", num(out.p_reject));
                println!("nonhalting {}", num(leftover));
            }
        }
        AnyMachine::Qfac(m) => {
            let probs = m.outcome_probs(word).map_err(Failure::domain)?;
            if args.json {
                let map: serde_json::Map<String, serde_json::Value> = m
                    .outcomes()
                    .iter()
                    .cloned()
                    .zip(probs.iter().map(|p| json!(p)))
                    .collect();
                println!("{}", json!({"model": "qfac", "word": word, "outcomes": map}));
            } else if let Some(ai) = m.outcomes().iter().position(|o| o == ACCEPT) {
                println!("{}", num(probs[ai]));
            } else {
                for (o, p) in m.outcomes().iter().zip(&probs) {
                    println!("{o} {}", num(*p));
                }
            }
        }
    }
    Ok(())
}

fn accept_prob_of(machine: &AnyMachine, word: &str) -> CliResult<f64> {
    match machine {
        AnyMachine::Mo(m) => m.accept_prob(word).map_err(Failure::domain),
        AnyMachine::KLetter(m) => m.accept_prob(word).map_err(Failure::domain),
        AnyMachine::Cl(m) => m.accept_prob(word).map_err(Failure::domain),
        AnyMachine::Mm(m) => Ok(m.run(word).map_err(Failure::domain)?.p_accept),
        AnyMachine::Qfac(m) => m.accept_prob(word).map_err(Failure::domain),
    }
}

fn alphabet_of(machine: &AnyMachine) -> Vec<String> {
    match machine {
        AnyMachine::Mo(m) => m.alphabet().to_vec(),
        AnyMachine::KLetter(m) => m.alphabet().to_vec(),
        AnyMachine::Cl(m) => m.alphabet().to_vec(),
        AnyMachine::Mm(m) => m.alphabet().to_vec(),
        AnyMachine::Qfac(m) => m.alphabet().to_vec(),
    }
}

fn sweep(args: SweepArgs) -> CliResult<()> {
    let machine = load_machine(&args.machine)?;
    let alphabet = alphabet_of(&machine);
    if alphabet.iter().any(|s| s.chars().count() != 1) {
        return Err(Failure::Domain(
            "sweep requires single-character symbols".into(),
        ));
    }
    let mut rows = vec!["word,p_accept".to_string()];
    let mut frontier = vec![String::new()];
    for _len in 0..=args.maxlen {
        let mut next = Vec::new();
        for word in &frontier {
            let p = accept_prob_of(&machine, word)?;
            rows.push(format!("{word},{}", num(p)));
            for sym in &alphabet {
                next.push(format!("{word}{sym}"));
            }
        }
        frontier = next;
    }
    emit(args.csv.as_ref(), &rows.join("\n"))
}
