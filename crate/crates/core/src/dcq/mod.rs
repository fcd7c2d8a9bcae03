//! Two-tape Turing machine with deterministic classical control: a
//! classical tape drives the finite control, while a fixed gate set acts
//! on a quantum tape whose contents never influence the control flow.
//! Halting is therefore a purely classical event.

mod machine;
mod sim;

pub use machine::{DcqMachine, DcqMachineDoc, Transition};
pub use sim::{
    decide, run, run_with_trace, Configuration, DcqOutput, DecideOutcome, Decision,
    QuantumWindow, RunOutcome, SimLimits, TraceLine, Verdict, DEFAULT_WINDOW_CAP,
};

use thiserror::Error;

use crate::linalg::LinalgError;

/// Classical tape symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TapeSym {
    Zero,
    One,
    Blank,
}

impl TapeSym {
    pub const ALL: [TapeSym; 3] = [TapeSym::Zero, TapeSym::One, TapeSym::Blank];

    pub fn index(self) -> usize {
        match self {
            TapeSym::Zero => 0,
            TapeSym::One => 1,
            TapeSym::Blank => 2,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            TapeSym::Zero => '0',
            TapeSym::One => '1',
            TapeSym::Blank => '_',
        }
    }

    pub fn from_char(c: char) -> Option<TapeSym> {
        match c {
            '0' => Some(TapeSym::Zero),
            '1' => Some(TapeSym::One),
            '_' => Some(TapeSym::Blank),
            _ => None,
        }
    }

    pub fn is_bit(self) -> bool {
        !matches!(self, TapeSym::Blank)
    }
}

/// Head displacement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Stay,
    Right,
}

impl Move {
    pub fn offset(self) -> i64 {
        match self {
            Move::Left => -1,
            Move::Stay => 0,
            Move::Right => 1,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Move::Left => "L",
            Move::Stay => "N",
            Move::Right => "R",
        }
    }

    pub fn from_code(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::Left),
            "N" => Some(Move::Stay),
            "R" => Some(Move::Right),
            _ => None,
        }
    }
}

/// Primitive gate applied at the quantum head. Two-qubit gates act on the
/// head qubit (control / left) and its right neighbour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Id,
    H,
    S,
    T,
    Swap,
    Cnot,
}

impl Gate {
    pub fn arity(self) -> usize {
        match self {
            Gate::Id | Gate::H | Gate::S | Gate::T => 1,
            Gate::Swap | Gate::Cnot => 2,
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            Gate::Id => "ID",
            Gate::H => "H",
            Gate::S => "S",
            Gate::T => "T",
            Gate::Swap => "SWAP",
            Gate::Cnot => "CNOT",
        }
    }

    pub fn from_code(s: &str) -> Option<Gate> {
        match s {
            "ID" => Some(Gate::Id),
            "H" => Some(Gate::H),
            "S" => Some(Gate::S),
            "T" => Some(Gate::T),
            "SWAP" => Some(Gate::Swap),
            "CNOT" => Some(Gate::Cnot),
            _ => None,
        }
    }

    /// Dense matrix of the gate, 2x2 or 4x4 with basis order
    /// |head, right-neighbour>.
    pub fn matrix(self) -> crate::linalg::CMatrix {
        use crate::linalg::{CMatrix, Complex64};
        let h = 1.0 / 2.0_f64.sqrt();
        match self {
            Gate::Id => CMatrix::identity(2),
            Gate::H => CMatrix::from_real(2, 2, &[h, h, h, -h]),
            Gate::S => {
                let mut m = CMatrix::zeros(2, 2);
                m[(0, 0)] = Complex64::new(1.0, 0.0);
                m[(1, 1)] = Complex64::new(0.0, 1.0);
                m
            }
            Gate::T => {
                let mut m = CMatrix::zeros(2, 2);
                m[(0, 0)] = Complex64::new(1.0, 0.0);
                m[(1, 1)] = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
                m
            }
            Gate::Swap => CMatrix::from_real(
                4,
                4,
                &[
                    1.0, 0.0, 0.0, 0.0, //
                    0.0, 0.0, 1.0, 0.0, //
                    0.0, 1.0, 0.0, 0.0, //
                    0.0, 0.0, 0.0, 1.0,
                ],
            ),
            Gate::Cnot => CMatrix::from_real(
                4,
                4,
                &[
                    1.0, 0.0, 0.0, 0.0, //
                    0.0, 1.0, 0.0, 0.0, //
                    0.0, 0.0, 0.0, 1.0, //
                    0.0, 0.0, 1.0, 0.0,
                ],
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DcqError {
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("quantum window would exceed {cap} qubits")]
    WindowOverflow { cap: usize },
    #[error("malformed output: {0}")]
    MalformedOutput(String),
    #[error("no quantum output register")]
    NoQuantumOutput,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Parses a bitstring ("01...") into tape symbols; rejects non-bits.
pub fn bits(s: &str) -> Result<Vec<TapeSym>, DcqError> {
    s.chars()
        .map(|c| match TapeSym::from_char(c) {
            Some(sym) if sym.is_bit() => Ok(sym),
            _ => Err(DcqError::InvalidInput(format!(
                "expected a bit, found {c:?}"
            ))),
        })
        .collect()
}

/// Parses a tape word that may contain blanks written as '_'.
pub fn tape_word(s: &str) -> Result<Vec<TapeSym>, DcqError> {
    s.chars()
        .map(|c| {
            TapeSym::from_char(c)
                .ok_or_else(|| DcqError::InvalidInput(format!("unknown tape symbol {c:?}")))
        })
        .collect()
}

/// `p` blank `x`, the standard program/input layout.
pub fn program_input_word(p: &[TapeSym], x: &[TapeSym]) -> Vec<TapeSym> {
    let mut w = Vec::with_capacity(p.len() + 1 + x.len());
    w.extend_from_slice(p);
    w.push(TapeSym::Blank);
    w.extend_from_slice(x);
    w
}
