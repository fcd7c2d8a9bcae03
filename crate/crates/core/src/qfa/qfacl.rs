//! Control-language automata: after each symbol (including the internally
//! appended end-marker) an observable is measured, and a word is accepted
//! with the total probability of the outcome sequences that belong to a
//! regular control language over the outcome alphabet.
//!
//! The acceptance probability is computed by carrying one unnormalized
//! density operator per control-automaton state, which folds the
//! exponentially many outcome branches into |C| * dim^2 numbers per step.
//! The literal branch enumeration is kept as `accept_prob_enumerated` and
//! serves as the oracle in tests.

use crate::dfa::Dfa;
use crate::linalg::{CMatrix, ProjectiveMeasurement, StateVector, UnitaryOperator};

use super::{check_unique, index_of, QfaError, END_MARKER};

#[derive(Debug, Clone)]
pub struct QfaCl {
    basis: Vec<String>,
    alphabet: Vec<String>,
    initial: StateVector,
    unitaries: Vec<UnitaryOperator>,
    end_unitary: UnitaryOperator,
    observable: ProjectiveMeasurement,
    control: Dfa,
    /// observable outcome index -> control alphabet index
    outcome_to_control: Vec<usize>,
}

impl QfaCl {
    pub fn new(
        basis: Vec<String>,
        alphabet: Vec<String>,
        initial: StateVector,
        unitaries: Vec<(String, UnitaryOperator)>,
        end_unitary: UnitaryOperator,
        observable: ProjectiveMeasurement,
        control: Dfa,
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
        if end_unitary.dim() != dim || observable.dim() != dim {
            return Err(QfaError::InvalidMachine(
                "operator dimensions do not match the basis".into(),
            ));
        }
        let mut by_symbol: Vec<Option<UnitaryOperator>> = vec![None; alphabet.len()];
        for (sym, u) in unitaries {
            let i = index_of(&alphabet, &sym).ok_or(QfaError::UnknownSymbol(sym))?;
            if u.dim() != dim {
                return Err(QfaError::InvalidMachine(
                    "symbol unitary has wrong dimension".into(),
                ));
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
        // The control automaton reads exactly the observable's outcomes.
        let mut outcome_to_control = Vec::with_capacity(observable.outcomes().len());
        for outcome in observable.outcomes() {
            let i = control
                .symbol_index(outcome)
                .map_err(|_| QfaError::UnknownOutcome(outcome.clone()))?;
            outcome_to_control.push(i);
        }
        if control.alphabet().len() != observable.outcomes().len() {
            return Err(QfaError::InvalidMachine(
                "control alphabet and observable outcomes differ".into(),
            ));
        }
        Ok(QfaCl {
            basis,
            alphabet,
            initial,
            unitaries,
            end_unitary,
            observable,
            control,
            outcome_to_control,
        })
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

    pub fn unitary(&self, symbol: &str) -> Option<&UnitaryOperator> {
        if symbol == END_MARKER {
            return Some(&self.end_unitary);
        }
        index_of(&self.alphabet, symbol).map(|i| &self.unitaries[i])
    }

    pub fn observable(&self) -> &ProjectiveMeasurement {
        &self.observable
    }

    pub fn control(&self) -> &Dfa {
        &self.control
    }

    fn step_operators(&self, word: &[usize]) -> Vec<&UnitaryOperator> {
        word.iter()
            .map(|&c| &self.unitaries[c])
            .chain(std::iter::once(&self.end_unitary))
            .collect()
    }

    /// Acceptance probability via the per-control-state density recursion.
    pub fn accept_prob(&self, word: &str) -> Result<f64, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        Ok(self.accept_prob_indices(&idx))
    }

    pub fn accept_prob_indices(&self, word: &[usize]) -> f64 {
        let dim = self.basis.len();
        let n_ctrl = self.control.state_count();
        let zero = CMatrix::zeros(dim, dim);
        let mut rho: Vec<Option<CMatrix>> = vec![None; n_ctrl];
        // rho[start] = |psi0><psi0|
        let mut init = zero.clone();
        for r in 0..dim {
            for c in 0..dim {
                init[(r, c)] =
                    self.initial.amplitudes()[r] * self.initial.amplitudes()[c].conj();
            }
        }
        rho[self.control.start_index()] = Some(init);
        for u in self.step_operators(word) {
            let mut next: Vec<Option<CMatrix>> = vec![None; n_ctrl];
            for (d, maybe_rho) in rho.iter().enumerate() {
                let Some(r) = maybe_rho else { continue };
                let evolved = u
                    .matrix()
                    .mul_mat(r)
                    .and_then(|m| m.mul_mat(&u.matrix().adjoint()))
                    .expect("validated dimensions");
                for (oi, p) in self.observable.projectors().iter().enumerate() {
                    let collapsed = p
                        .mul_mat(&evolved)
                        .and_then(|m| m.mul_mat(p))
                        .expect("validated dimensions");
                    let target = self.control.next_index(d, self.outcome_to_control[oi]);
                    let slot = next[target].get_or_insert_with(|| zero.clone());
                    *slot = slot.add(&collapsed);
                }
            }
            rho = next;
        }
        let mut total = 0.0;
        for (d, maybe_rho) in rho.iter().enumerate() {
            if !self.control.is_accepting_index(d) {
                continue;
            }
            if let Some(r) = maybe_rho {
                for i in 0..dim {
                    total += r[(i, i)].re;
                }
            }
        }
        total
    }

    /// Acceptance probability by explicit enumeration of all outcome
    /// sequences. Exponential in the word length; intended as an oracle.
    pub fn accept_prob_enumerated(&self, word: &str) -> Result<f64, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        Ok(self.accept_prob_enumerated_indices(&idx))
    }

    pub fn accept_prob_enumerated_indices(&self, word: &[usize]) -> f64 {
        let ops = self.step_operators(word);
        self.enumerate(&self.initial, self.control.start_index(), &ops)
    }

    fn enumerate(&self, v: &StateVector, ctrl: usize, ops: &[&UnitaryOperator]) -> f64 {
        let Some((u, rest)) = ops.split_first() else {
            return if self.control.is_accepting_index(ctrl) {
                v.norm_sq()
            } else {
                0.0
            };
        };
        let evolved = u.apply(v).expect("validated dimensions");
        let mut total = 0.0;
        for (oi, p) in self.observable.projectors().iter().enumerate() {
            let branch = p.mul_vec(&evolved).expect("validated dimensions");
            if branch.norm_sq() < 1e-18 {
                // A zero branch contributes zero to every completion.
                continue;
            }
            let target = self.control.next_index(ctrl, self.outcome_to_control[oi]);
            total += self.enumerate(&branch, target, rest);
        }
        total
    }
}
