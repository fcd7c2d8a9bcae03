//! Measure-many automata: after every symbol (and the internally appended
//! end-marker) the state is measured against the accept / reject /
//! non-halting spans. The non-halting component is carried unnormalized
//! between steps and the halting masses accumulate.

use crate::linalg::{basis_projector, CMatrix, StateVector, UnitaryOperator};

use super::{check_unique, index_of, QfaError, END_MARKER};

#[derive(Debug, Clone)]
pub struct Mm1Qfa {
    basis: Vec<String>,
    alphabet: Vec<String>,
    initial: StateVector,
    unitaries: Vec<UnitaryOperator>,
    end_unitary: UnitaryOperator,
    accepting: Vec<String>,
    rejecting: Vec<String>,
    p_acc: CMatrix,
    p_rej: CMatrix,
    p_non: CMatrix,
}

/// Per-step record of a measure-many run.
#[derive(Debug, Clone)]
pub struct MmStep {
    pub symbol: String,
    /// Probability mass that halted accepting at this step.
    pub accept_mass: f64,
    /// Probability mass that halted rejecting at this step.
    pub reject_mass: f64,
    /// Squared norm of the surviving non-halting component.
    pub nonhalting_mass: f64,
}

#[derive(Debug, Clone)]
pub struct MmOutcome {
    pub p_accept: f64,
    pub p_reject: f64,
    pub history: Vec<MmStep>,
}

impl Mm1Qfa {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: Vec<(String, UnitaryOperator)>,
        end_unitary: UnitaryOperator,
        accepting: Vec<String>,
        rejecting: Vec<String>,
    ) -> Result<Self, QfaError> {
        check_unique(&basis, "basis")?;
        check_unique(&alphabet, "alphabet")?;
        if alphabet.iter().any(|s| s == END_MARKER) {
            return Err(QfaError::InvalidMachine(
                "the end-marker symbol is reserved".into(),
            ));
        }
        let dim = basis.len();
        if initial.dim() != dim || !initial.is_normalized(crate::linalg::VALIDATION_TOL) {
            return Err(QfaError::InvalidMachine(
                "initial state has wrong dimension or norm".into(),
            ));
        }
        if end_unitary.dim() != dim {
            return Err(QfaError::InvalidMachine(
                "end-marker unitary has wrong dimension".into(),
            ));
        }
        let mut by_symbol: Vec<Option<UnitaryOperator>> = vec![None; alphabet.len()];
        for (sym, u) in unitaries {
            let i = index_of(&alphabet, &sym).ok_or(QfaError::UnknownSymbol(sym))?;
            if u.dim() != dim {
                return Err(QfaError::InvalidMachine(format!(
                    "unitary for symbol {:?} has dimension {}",
                    alphabet[i],
                    u.dim()
                )));
            }
            by_symbol[i] = Some(u);
        }
        let unitaries = by_symbol
            .into_iter()
            .enumerate()
            .map(|(i, u)| {
                u.ok_or_else(|| {
                    QfaError::InvalidMachine(format!("missing unitary for symbol {:?}", alphabet[i]))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc_idx = Vec::new();
        for a in &accepting {
            acc_idx.push(index_of(&basis, a).ok_or_else(|| QfaError::UnknownState(a.clone()))?);
        }
        let mut rej_idx = Vec::new();
        for r in &rejecting {
            let i = index_of(&basis, r).ok_or_else(|| QfaError::UnknownState(r.clone()))?;
            if acc_idx.contains(&i) {
                return Err(QfaError::InvalidMachine(format!(
                    "state {r:?} is both accepting and rejecting"
                )));
            }
            rej_idx.push(i);
        }
        let non_idx: Vec<usize> = (0..dim)
            .filter(|i| !acc_idx.contains(i) && !rej_idx.contains(i))
            .collect();
        Ok(Mm1Qfa {
            p_acc: basis_projector(dim, &acc_idx),
            p_rej: basis_projector(dim, &rej_idx),
            p_non: basis_projector(dim, &non_idx),
            basis,
            alphabet,
            initial,
            unitaries,
            end_unitary,
            accepting,
            rejecting,
        })
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn accepting(&self) -> &[String] {
        &self.accepting
    }

    pub fn rejecting(&self) -> &[String] {
        &self.rejecting
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn unitary(&self, symbol: &str) -> Option<&UnitaryOperator> {
        index_of(&self.alphabet, symbol).map(|i| &self.unitaries[i])
    }

    pub fn end_unitary(&self) -> &UnitaryOperator {
        &self.end_unitary
    }

    pub fn projectors(&self) -> (&CMatrix, &CMatrix, &CMatrix) {
        (&self.p_acc, &self.p_rej, &self.p_non)
    }

    /// Runs the machine on `word` (end-marker appended internally).
    pub fn run(&self, word: &str) -> Result<MmOutcome, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        Ok(self.run_indices(&idx))
    }

    pub fn run_indices(&self, word: &[usize]) -> MmOutcome {
        let mut nonhalting = self.initial.clone();
        let mut p_accept = 0.0;
        let mut p_reject = 0.0;
        let mut history = Vec::with_capacity(word.len() + 1);
        let steps = word
            .iter()
            .map(|&c| (self.alphabet[c].clone(), &self.unitaries[c]))
            .chain(std::iter::once((END_MARKER.to_string(), &self.end_unitary)));
        for (symbol, u) in steps {
            let evolved = u.apply(&nonhalting).expect("validated dimensions");
            let acc = self.p_acc.mul_vec(&evolved).expect("dims").norm_sq();
            let rej = self.p_rej.mul_vec(&evolved).expect("dims").norm_sq();
            nonhalting = self.p_non.mul_vec(&evolved).expect("dims");
            p_accept += acc;
            p_reject += rej;
            history.push(MmStep {
                symbol,
                accept_mass: acc,
                reject_mass: rej,
                nonhalting_mass: nonhalting.norm_sq(),
            });
        }
        MmOutcome {
            p_accept,
            p_reject,
            history,
        }
    }
}
