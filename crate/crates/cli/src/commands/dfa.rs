//! `dfa minimize|nerode|fcheck|fig3check`.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde_json::json;

use qcm_core::dfa::{detect_f_construction, detect_fig3_construction, DfaDoc};

use crate::io::{emit, load_dfa, to_pretty_json, CliResult};

#[derive(Subcommand)]
pub enum DfaCmd {
    /// Minimal automaton for the document's language
    Minimize(MinimizeArgs),
    /// Right-congruence class count of the language
    Nerode(PathArgs),
    /// Search the minimal automaton for the merge/fixpoint pattern
    Fcheck(CheckArgs),
    /// Search the minimal automaton for the loop/return pattern
    Fig3check(CheckArgs),
}

#[derive(Args)]
pub struct MinimizeArgs {
    dfa: PathBuf,
    /// Print the minimized document instead of the summary
    #[arg(long)]
    json: bool,
    /// Write the minimized document to a file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
pub struct PathArgs {
    dfa: PathBuf,
}

#[derive(Args)]
pub struct CheckArgs {
    dfa: PathBuf,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

pub fn run(cmd: DfaCmd) -> CliResult<()> {
    match cmd {
        DfaCmd::Minimize(args) => {
            let d = load_dfa(&args.dfa)?;
            let m = d.minimize();
            let doc = DfaDoc::from(&m);
            if let Some(out) = &args.out {
                emit(Some(out), &to_pretty_json(&doc))?;
                println!("states: {}", m.state_count());
            } else if args.json {
                println!("{}", to_pretty_json(&doc));
            } else {
                println!("states: {}", m.state_count());
            }
            Ok(())
        }
        DfaCmd::Nerode(args) => {
            let d = load_dfa(&args.dfa)?;
            println!("nerode classes: {}", d.nerode_class_count());
            Ok(())
        }
        DfaCmd::Fcheck(args) => {
            let d = load_dfa(&args.dfa)?;
            match detect_f_construction(&d) {
                Some(w) => {
                    if args.json {
                        println!(
                            "{}",
                            json!({"witness": {"q1": w.q1, "q2": w.q2, "z": w.z, "t": w.t}})
                        );
                    } else {
                        println!("witness: {w}");
                    }
                }
                None => {
                    if args.json {
                        println!("{}", json!({ "witness": null }));
                    } else {
                        println!("none");
                    }
                }
            }
            Ok(())
        }
        DfaCmd::Fig3check(args) => {
            let d = load_dfa(&args.dfa)?;
            match detect_fig3_construction(&d) {
                Some(w) => {
                    if args.json {
                        println!(
                            "{}",
                            json!({"witness": {
                                "p": w.p, "q": w.q, "x": w.x, "y": w.y, "z": w.z
                            }})
                        );
                    } else {
                        println!("witness: {w}");
                    }
                }
                None => {
                    if args.json {
                        println!("{}", json!({ "witness": null }));
                    } else {
                        println!("none");
                    }
                }
            }
            Ok(())
        }
    }
}
