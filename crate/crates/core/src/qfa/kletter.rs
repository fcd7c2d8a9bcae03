//! Multi-letter automata: the unitary applied for each input symbol is
//! selected by the window of the last `k` symbols, left-padded with a
//! padding marker before the word has `k` symbols. With `k = 1` the model
//! collapses to the measure-once automaton.

use std::collections::HashMap;

use crate::linalg::{basis_projector, CMatrix, StateVector, UnitaryOperator};

use super::{check_unique, index_of, Mo1Qfa, QfaError};

/// A window entry: `None` is the pre-word padding marker.
pub type WindowSym = Option<usize>;

#[derive(Debug, Clone)]
pub struct KLetterQfa {
    k: usize,
    basis: Vec<String>,
    alphabet: Vec<String>,
    initial: StateVector,
    transitions: HashMap<Vec<WindowSym>, UnitaryOperator>,
    accepting: Vec<String>,
    acc_projector: CMatrix,
}

impl KLetterQfa {
    pub fn new(
        k: usize,
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        transitions: Vec<(Vec<Option<String>>, UnitaryOperator)>,
        accepting: Vec<String>,
    ) -> Result<Self, QfaError> {
        if k == 0 {
            return Err(QfaError::InvalidMachine("k must be at least 1".into()));
        }
        check_unique(&basis, "basis")?;
        check_unique(&alphabet, "alphabet")?;
        let dim = basis.len();
        if initial.dim() != dim || !initial.is_normalized(crate::linalg::VALIDATION_TOL) {
            return Err(QfaError::InvalidMachine(
                "initial state has wrong dimension or norm".into(),
            ));
        }
        let mut table: HashMap<Vec<WindowSym>, UnitaryOperator> = HashMap::new();
        for (window, u) in transitions {
            if window.len() != k {
                return Err(QfaError::InvalidMachine(format!(
                    "window {window:?} does not have length {k}"
                )));
            }
            if u.dim() != dim {
                return Err(QfaError::InvalidMachine(
                    "window unitary has wrong dimension".into(),
                ));
            }
            let key = window
                .iter()
                .map(|w| match w {
                    None => Ok(None),
                    Some(s) => index_of(&alphabet, s)
                        .map(Some)
                        .ok_or_else(|| QfaError::UnknownSymbol(s.clone())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.insert(key, u);
        }
        // Totality over the windows that can actually occur: padding, then
        // any i-symbol suffix for 1 <= i <= k.
        let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(suffix) = stack.pop() {
            if !suffix.is_empty() {
                let mut key: Vec<WindowSym> = vec![None; k - suffix.len()];
                key.extend(suffix.iter().map(|&c| Some(c)));
                if !table.contains_key(&key) {
                    let shown: Vec<String> = key
                        .iter()
                        .map(|w| match w {
                            None => "^".to_string(),
                            Some(c) => alphabet[*c].clone(),
                        })
                        .collect();
                    return Err(QfaError::InvalidMachine(format!(
                        "missing unitary for reachable window [{}]",
                        shown.join(" ")
                    )));
                }
            }
            if suffix.len() < k {
                for c in 0..alphabet.len() {
                    let mut next = suffix.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        let mut acc_idx = Vec::new();
        for a in &accepting {
            acc_idx.push(index_of(&basis, a).ok_or_else(|| QfaError::UnknownState(a.clone()))?);
        }
        Ok(KLetterQfa {
            acc_projector: basis_projector(dim, &acc_idx),
            k,
            basis,
            alphabet,
            initial,
            transitions: table,
            accepting,
        })
    }

    /// Wraps a measure-once machine as the equivalent 1-letter machine.
    pub fn from_mo(mo: &Mo1Qfa) -> Self {
        let transitions = mo
            .alphabet()
            .iter()
            .map(|s| {
                (
                    vec![Some(s.clone())],
                    mo.unitary(s).expect("alphabet symbol").clone(),
                )
            })
            .collect();
        Self::new(
            1,
            mo.basis().to_vec(),
            mo.alphabet().to_vec(),
            mo.initial().clone(),
            transitions,
            mo.accepting().to_vec(),
        )
        .expect("measure-once machines are always valid 1-letter machines")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
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

    pub fn windows(&self) -> impl Iterator<Item = (&Vec<WindowSym>, &UnitaryOperator)> {
        self.transitions.iter()
    }

    pub fn accept_prob_indices(&self, word: &[usize]) -> f64 {
        let mut window: Vec<WindowSym> = vec![None; self.k];
        let mut v = self.initial.clone();
        for &c in word {
            window.remove(0);
            window.push(Some(c));
            let u = self
                .transitions
                .get(&window)
                .expect("reachable windows are total by validation");
            v = u.apply(&v).expect("validated dimensions");
        }
        self.acc_projector
            .mul_vec(&v)
            .expect("validated dimensions")
            .norm_sq()
    }

    pub fn accept_prob(&self, word: &str) -> Result<f64, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        Ok(self.accept_prob_indices(&idx))
    }
}
