//! Measure-once automata: one unitary per symbol, a single projective
//! measurement onto the accepting span at the end of the word.

use crate::linalg::{basis_projector, CMatrix, StateVector, UnitaryOperator};

use super::{check_unique, index_of, Provenance, QfaError};

#[derive(Debug, Clone)]
pub struct Mo1Qfa {
    basis: Vec<String>,
    alphabet: Vec<String>,
    initial: StateVector,
    unitaries: Vec<UnitaryOperator>,
    accepting: Vec<String>,
    acc_projector: CMatrix,
    provenance: Option<Provenance>,
}

impl Mo1Qfa {
    pub fn new(
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: Vec<(String, UnitaryOperator)>,
        accepting: Vec<String>,
    ) -> Result<Self, QfaError> {
        check_unique(&basis, "basis")?;
        check_unique(&alphabet, "alphabet")?;
        let dim = basis.len();
        if initial.dim() != dim {
            return Err(QfaError::InvalidMachine(format!(
                "initial state has dimension {} but basis has {dim} states",
                initial.dim()
            )));
        }
        if !initial.is_normalized(crate::linalg::VALIDATION_TOL) {
            return Err(QfaError::InvalidMachine(
                "initial state is not normalized".into(),
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
        let mut acc_indices = Vec::new();
        for a in &accepting {
            let i = index_of(&basis, a).ok_or_else(|| QfaError::UnknownState(a.clone()))?;
            acc_indices.push(i);
        }
        let acc_projector = basis_projector(dim.max(1), &acc_indices);
        Ok(Mo1Qfa {
            basis,
            alphabet,
            initial,
            unitaries,
            accepting,
            acc_projector,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn accepting(&self) -> &[String] {
        &self.accepting
    }

    pub fn accept_projector(&self) -> &CMatrix {
        &self.acc_projector
    }

    pub fn unitary(&self, symbol: &str) -> Option<&UnitaryOperator> {
        index_of(&self.alphabet, symbol).map(|i| &self.unitaries[i])
    }

    pub fn unitary_by_index(&self, i: usize) -> &UnitaryOperator {
        &self.unitaries[i]
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize, QfaError> {
        index_of(&self.alphabet, symbol).ok_or_else(|| QfaError::UnknownSymbol(symbol.to_string()))
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// State after reading the word: `U(s_m) ... U(s_1) |psi0>`.
    pub fn final_state_indices(&self, word: &[usize]) -> StateVector {
        let mut v = self.initial.clone();
        for &c in word {
            v = self.unitaries[c].apply(&v).expect("validated dimensions");
        }
        v
    }

    pub fn accept_prob_indices(&self, word: &[usize]) -> f64 {
        let v = self.final_state_indices(word);
        self.acc_projector
            .mul_vec(&v)
            .expect("validated dimensions")
            .norm_sq()
    }

    /// Acceptance probability on a word given as one symbol per character.
    pub fn accept_prob(&self, word: &str) -> Result<f64, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        Ok(self.accept_prob_indices(&idx))
    }
}
