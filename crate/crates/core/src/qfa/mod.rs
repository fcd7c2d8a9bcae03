//! The one-way quantum finite automaton zoo.
//!
//! Five models share the same conventions: words are sequences of string
//! symbols (the `&str` entry points treat each character as one symbol),
//! end-markers are appended by the semantics and never supplied by callers,
//! and every machine is validated at construction.

mod kletter;
mod lifted;
mod mm;
mod mo;
mod qfac;
mod qfacl;
pub mod wire;

pub use kletter::KLetterQfa;
pub use lifted::LiftedQfac;
pub use mm::{Mm1Qfa, MmOutcome, MmStep};
pub use mo::Mo1Qfa;
pub use qfac::Qfac;
pub use qfacl::QfaCl;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dfa::DfaError;
use crate::linalg::LinalgError;

/// Reserved end-marker symbol, appended internally by the measure-many and
/// control-language semantics.
pub const END_MARKER: &str = "$";

/// Conventional outcome labels for acceptor machines.
pub const ACCEPT: &str = "a";
pub const REJECT: &str = "r";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QfaError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown outcome {0:?}")]
    UnknownOutcome(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("control automaton: {0}")]
    Control(#[from] DfaError),
}

/// Optional construction metadata carried by machine documents.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub multipliers: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub achieved_eps: Option<f64>,
    /// Acceptance threshold the machine was designed around, when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
}

pub(crate) fn index_of(labels: &[String], label: &str) -> Option<usize> {
    labels.iter().position(|l| l == label)
}

pub(crate) fn check_unique(labels: &[String], what: &str) -> Result<(), QfaError> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(QfaError::InvalidMachine(format!(
                "duplicate {what} label {l:?}"
            )));
        }
    }
    Ok(())
}

/// One symbol per character.
pub fn word_symbols(word: &str) -> Vec<String> {
    word.chars().map(|c| c.to_string()).collect()
}

pub(crate) fn word_to_indices(alphabet: &[String], word: &str) -> Result<Vec<usize>, QfaError> {
    word.chars()
        .map(|c| {
            let s = c.to_string();
            index_of(alphabet, &s).ok_or(QfaError::UnknownSymbol(s))
        })
        .collect()
}
