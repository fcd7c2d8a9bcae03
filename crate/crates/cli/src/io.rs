//! File loading, output plumbing, and the exit-code policy: 0 on success,
//! 1 on domain errors, 2 on malformed input.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use qcm_core::dfa::{Dfa, DfaDoc};
use qcm_core::linalg::{vector_from_wire, vector_to_wire, ComplexWire, StateVector};
use qcm_core::qfa::wire::{AnyMachine, MachineDoc};

pub enum Failure {
    /// Unreadable, unparsable, or schema-invalid input: exit code 2.
    Malformed(String),
    /// Valid input, but the requested operation failed: exit code 1.
    Domain(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Domain(m) => m,
        }
    }

    pub fn domain(err: impl Display) -> Failure {
        Failure::Domain(err.to_string())
    }

    pub fn malformed(err: impl Display) -> Failure {
        Failure::Malformed(err.to_string())
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_dfa(path: &Path) -> CliResult<Dfa> {
    let doc: DfaDoc = load_json(path)?;
    Dfa::try_from(doc).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

pub fn load_machine(path: &Path) -> CliResult<AnyMachine> {
    let doc: MachineDoc = load_json(path)?;
    AnyMachine::try_from(doc).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

/// Quantum state document: amplitudes as [re, im] pairs.
#[derive(Serialize, Deserialize)]
pub struct StateDoc {
    pub amplitudes: Vec<ComplexWire>,
}

pub fn load_state(path: &Path) -> CliResult<StateVector> {
    let doc: StateDoc = load_json(path)?;
    vector_from_wire(&doc.amplitudes)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

pub fn state_doc(v: &StateVector) -> StateDoc {
    StateDoc {
        amplitudes: vector_to_wire(v),
    }
}

/// Writes to the file when given, otherwise to stdout.
pub fn emit(out: Option<&PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// Probabilities and other reals: twelve digits after the point.
pub fn num(x: f64) -> String {
    format!("{x:.12}")
}
