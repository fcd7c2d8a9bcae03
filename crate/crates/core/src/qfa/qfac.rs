//! Hybrid automata with classical and quantum states. The classical state
//! follows a deterministic transition map and selects both the unitary
//! applied per symbol and the projective measurement performed at the end.

use crate::linalg::{ProjectiveMeasurement, StateVector, UnitaryOperator};

use super::{check_unique, index_of, Provenance, QfaError, ACCEPT};

#[derive(Debug, Clone)]
pub struct Qfac {
    classical: Vec<String>,
    basis: Vec<String>,
    alphabet: Vec<String>,
    outcomes: Vec<String>,
    start: usize,
    initial: StateVector,
    /// `delta[s][c]` -> classical state
    delta: Vec<Vec<usize>>,
    /// `unitaries[s][c]`
    unitaries: Vec<Vec<UnitaryOperator>>,
    /// one complete measurement per classical state, over `outcomes`
    measurements: Vec<ProjectiveMeasurement>,
    provenance: Option<Provenance>,
}

impl Qfac {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        classical: Vec<String>,
        basis: Vec<String>,
        alphabet: Vec<String>,
        outcomes: Vec<String>,
        start: String,
        initial: StateVector,
        delta: Vec<(String, String, String)>,
        unitaries: Vec<(String, String, UnitaryOperator)>,
        measurements: Vec<(String, String, crate::linalg::CMatrix)>,
    ) -> Result<Self, QfaError> {
        check_unique(&classical, "classical state")?;
        check_unique(&basis, "basis")?;
        check_unique(&alphabet, "alphabet")?;
        check_unique(&outcomes, "outcome")?;
        let ns = classical.len();
        let nc = alphabet.len();
        let dim = basis.len();
        if initial.dim() != dim || !initial.is_normalized(crate::linalg::VALIDATION_TOL) {
            return Err(QfaError::InvalidMachine(
                "initial quantum state has wrong dimension or norm".into(),
            ));
        }
        let start =
            index_of(&classical, &start).ok_or_else(|| QfaError::UnknownState(start.clone()))?;

        let mut dtab = vec![vec![usize::MAX; nc]; ns];
        for (s, sym, t) in delta {
            let si = index_of(&classical, &s).ok_or_else(|| QfaError::UnknownState(s.clone()))?;
            let ci = index_of(&alphabet, &sym).ok_or(QfaError::UnknownSymbol(sym))?;
            let ti = index_of(&classical, &t).ok_or_else(|| QfaError::UnknownState(t.clone()))?;
            dtab[si][ci] = ti;
        }
        let mut utab: Vec<Vec<Option<UnitaryOperator>>> = vec![vec![None; nc]; ns];
        for (s, sym, u) in unitaries {
            let si = index_of(&classical, &s).ok_or_else(|| QfaError::UnknownState(s.clone()))?;
            let ci = index_of(&alphabet, &sym).ok_or(QfaError::UnknownSymbol(sym))?;
            if u.dim() != dim {
                return Err(QfaError::InvalidMachine(format!(
                    "unitary at ({}, {}) has dimension {}",
                    classical[si],
                    alphabet[ci],
                    u.dim()
                )));
            }
            utab[si][ci] = Some(u);
        }
        let mut dfinal = Vec::with_capacity(ns);
        let mut ufinal = Vec::with_capacity(ns);
        for s in 0..ns {
            let mut drow = Vec::with_capacity(nc);
            let mut urow = Vec::with_capacity(nc);
            for c in 0..nc {
                if dtab[s][c] == usize::MAX {
                    return Err(QfaError::InvalidMachine(format!(
                        "classical transition missing at ({}, {})",
                        classical[s], alphabet[c]
                    )));
                }
                drow.push(dtab[s][c]);
                urow.push(utab[s][c].take().ok_or_else(|| {
                    QfaError::InvalidMachine(format!(
                        "unitary missing at ({}, {})",
                        classical[s], alphabet[c]
                    ))
                })?);
            }
            dfinal.push(drow);
            ufinal.push(urow);
        }

        // Group measurement entries per classical state, in outcome order,
        // and let ProjectiveMeasurement enforce completeness/orthogonality.
        let mut mtab: Vec<Vec<Option<crate::linalg::CMatrix>>> =
            vec![vec![None; outcomes.len()]; ns];
        for (s, g, p) in measurements {
            let si = index_of(&classical, &s).ok_or_else(|| QfaError::UnknownState(s.clone()))?;
            let gi = index_of(&outcomes, &g).ok_or(QfaError::UnknownOutcome(g))?;
            mtab[si][gi] = Some(p);
        }
        let mut mfinal = Vec::with_capacity(ns);
        for (s, row) in mtab.into_iter().enumerate() {
            let projs = row
                .into_iter()
                .enumerate()
                .map(|(gi, p)| {
                    p.ok_or_else(|| {
                        QfaError::InvalidMachine(format!(
                            "projector missing at ({}, {})",
                            classical[s], outcomes[gi]
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            mfinal.push(ProjectiveMeasurement::new(outcomes.clone(), projs)?);
        }

        Ok(Qfac {
            classical,
            basis,
            alphabet,
            outcomes,
            start,
            initial,
            delta: dfinal,
            unitaries: ufinal,
            measurements: mfinal,
            provenance: None,
        })
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn classical_states(&self) -> &[String] {
        &self.classical
    }

    pub fn classical_count(&self) -> usize {
        self.classical.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn quantum_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn start_index(&self) -> usize {
        self.start
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn next_classical(&self, s: usize, c: usize) -> usize {
        self.delta[s][c]
    }

    pub fn unitary_at(&self, s: usize, c: usize) -> &UnitaryOperator {
        &self.unitaries[s][c]
    }

    pub fn measurement_at(&self, s: usize) -> &ProjectiveMeasurement {
        &self.measurements[s]
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn symbol_indices(&self, word: &str) -> Result<Vec<usize>, QfaError> {
        super::word_to_indices(&self.alphabet, word)
    }

    /// Classical state and quantum state after reading the word.
    pub fn run_indices(&self, word: &[usize]) -> (usize, StateVector) {
        let mut s = self.start;
        let mut v = self.initial.clone();
        for &c in word {
            v = self.unitaries[s][c].apply(&v).expect("validated dimensions");
            s = self.delta[s][c];
        }
        (s, v)
    }

    /// Probability of producing `outcome` on the word.
    pub fn outcome_prob(&self, word: &str, outcome: &str) -> Result<f64, QfaError> {
        let idx = self.symbol_indices(word)?;
        let gi = index_of(&self.outcomes, outcome)
            .ok_or_else(|| QfaError::UnknownOutcome(outcome.to_string()))?;
        Ok(self.outcome_prob_indices(&idx, gi))
    }

    pub fn outcome_prob_indices(&self, word: &[usize], outcome: usize) -> f64 {
        let (s, v) = self.run_indices(word);
        self.measurements[s].projectors()[outcome]
            .mul_vec(&v)
            .expect("validated dimensions")
            .norm_sq()
    }

    /// All outcome probabilities, in outcome declaration order.
    pub fn outcome_probs(&self, word: &str) -> Result<Vec<f64>, QfaError> {
        let idx = self.symbol_indices(word)?;
        let (s, v) = self.run_indices(&idx);
        Ok(self.measurements[s]
            .measure(&v)
            .expect("validated dimensions")
            .into_iter()
            .map(|b| b.probability)
            .collect())
    }

    /// Acceptance probability, for machines using the `a`/`r` convention.
    pub fn accept_prob(&self, word: &str) -> Result<f64, QfaError> {
        self.outcome_prob(word, ACCEPT)
    }

    pub fn accept_prob_indices(&self, word: &[usize]) -> Result<f64, QfaError> {
        let gi = index_of(&self.outcomes, ACCEPT)
            .ok_or_else(|| QfaError::UnknownOutcome(ACCEPT.to_string()))?;
        Ok(self.outcome_prob_indices(word, gi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::basis_projector;

    #[test]
    fn single_classical_state_reduces_to_measure_once() {
        let mut rng = crate::random::rng(31);
        for _ in 0..20 {
            let mo = crate::random::random_mo1qfa(3, &["0", "1"], &mut rng);
            let dim = mo.dim();
            let acc = mo.accept_projector().clone();
            let rej = crate::linalg::CMatrix::identity(dim).sub(&acc);
            let mut unitaries = Vec::new();
            let mut delta = Vec::new();
            for sym in mo.alphabet() {
                delta.push(("s".to_string(), sym.clone(), "s".to_string()));
                unitaries.push(("s".to_string(), sym.clone(), mo.unitary(sym).unwrap().clone()));
            }
            let q = Qfac::new(
                vec!["s".into()],
                mo.basis().to_vec(),
                mo.alphabet().to_vec(),
                vec!["a".into(), "r".into()],
                "s".into(),
                mo.initial().clone(),
                delta,
                unitaries,
                vec![
                    ("s".into(), "a".into(), acc),
                    ("s".into(), "r".into(), rej),
                ],
            )
            .unwrap();
            for word in ["", "0", "01", "1101"] {
                let a = mo.accept_prob(word).unwrap();
                let b = q.accept_prob(word).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_word_measures_initial_state_at_start() {
        let p0 = basis_projector(2, &[0]);
        let p1 = basis_projector(2, &[1]);
        let h = 1.0 / 2.0_f64.sqrt();
        let init = StateVector::new(vec![
            crate::linalg::Complex64::new(h, 0.0),
            crate::linalg::Complex64::new(0.0, h),
        ])
        .unwrap();
        let q = Qfac::new(
            vec!["s".into()],
            vec!["e0".into(), "e1".into()],
            vec!["0".into()],
            vec!["a".into(), "r".into()],
            "s".into(),
            init,
            vec![("s".into(), "0".into(), "s".into())],
            vec![("s".into(), "0".into(), UnitaryOperator::identity(2))],
            vec![("s".into(), "a".into(), p0), ("s".into(), "r".into(), p1)],
        )
        .unwrap();
        assert!((q.outcome_prob("", "a").unwrap() - 0.5).abs() < 1e-12);
        assert!((q.outcome_prob("", "r").unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn outcome_probabilities_sum_to_one() {
        let mut rng = crate::random::rng(41);
        for _ in 0..20 {
            let q = crate::random::random_qfac(3, 3, &["0", "1"], 3, &mut rng);
            for word in ["", "0", "10", "1100"] {
                let total: f64 = q.outcome_probs(word).unwrap().iter().sum();
                assert!((total - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn unknown_outcome_is_an_error() {
        let mut rng = crate::random::rng(43);
        let q = crate::random::random_qfac(2, 2, &["0"], 2, &mut rng);
        assert!(matches!(
            q.outcome_prob("0", "nope"),
            Err(QfaError::UnknownOutcome(_))
        ));
    }
}
