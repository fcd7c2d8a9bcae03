//! Single-space form of a hybrid automaton: the classical and quantum parts
//! are folded into one vector space of dimension |S|*|Q|, with one block
//! operator per symbol and one block-diagonal projector per outcome.
//!
//! The block operators permute classical blocks while acting unitarily
//! inside them; they are isometries on the reachable product vectors but
//! not unitary matrices when the classical transition merges states, so
//! they are stored as plain operators.

use crate::linalg::{CMatrix, StateVector};

use super::{index_of, Qfac, QfaError};

#[derive(Debug, Clone)]
pub struct LiftedQfac {
    classical_count: usize,
    quantum_dim: usize,
    alphabet: Vec<String>,
    outcomes: Vec<String>,
    initial: StateVector,
    ops: Vec<CMatrix>,
    projectors: Vec<CMatrix>,
}

impl LiftedQfac {
    pub fn dim(&self) -> usize {
        self.classical_count * self.quantum_dim
    }

    pub fn classical_count(&self) -> usize {
        self.classical_count
    }

    pub fn quantum_dim(&self) -> usize {
        self.quantum_dim
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn operator(&self, symbol_index: usize) -> &CMatrix {
        &self.ops[symbol_index]
    }

    pub fn projector(&self, outcome_index: usize) -> &CMatrix {
        &self.projectors[outcome_index]
    }

    pub fn apply_symbol(&self, v: &StateVector, symbol_index: usize) -> StateVector {
        self.ops[symbol_index].mul_vec(v).expect("lifted dimensions")
    }

    /// `M(x) |phi0>`, applying the word left to right.
    pub fn evolve_indices(&self, word: &[usize]) -> StateVector {
        let mut v = self.initial.clone();
        for &c in word {
            v = self.apply_symbol(&v, c);
        }
        v
    }

    pub fn outcome_prob_indices(&self, word: &[usize], outcome: usize) -> f64 {
        let v = self.evolve_indices(word);
        self.projectors[outcome]
            .mul_vec(&v)
            .expect("lifted dimensions")
            .norm_sq()
    }

    pub fn outcome_prob(&self, word: &str, outcome: &str) -> Result<f64, QfaError> {
        let idx = super::word_to_indices(&self.alphabet, word)?;
        let gi = index_of(&self.outcomes, outcome)
            .ok_or_else(|| QfaError::UnknownOutcome(outcome.to_string()))?;
        Ok(self.outcome_prob_indices(&idx, gi))
    }

    /// Splits a lifted vector into its per-classical-state blocks that carry
    /// non-negligible mass. Reachable vectors have exactly one.
    pub fn occupied_blocks(&self, v: &StateVector, tol: f64) -> Vec<usize> {
        let q = self.quantum_dim;
        (0..self.classical_count)
            .filter(|s| {
                v.amplitudes()[s * q..(s + 1) * q]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .sum::<f64>()
                    > tol
            })
            .collect()
    }
}

impl Qfac {
    /// Folds the machine into its single-space form. Probabilities agree
    /// with the direct evaluation within 1e-10 on every word.
    pub fn lift(&self) -> LiftedQfac {
        let ns = self.classical_count();
        let nq = self.quantum_dim();
        let dim = ns * nq;
        let alphabet = self.alphabet().to_vec();
        let outcomes = self.outcomes().to_vec();

        let mut ops = Vec::with_capacity(alphabet.len());
        for c in 0..alphabet.len() {
            let mut m = CMatrix::zeros(dim, dim);
            for s in 0..ns {
                let t = self.next_classical(s, c);
                let u = self.unitary_at(s, c).matrix();
                for r in 0..nq {
                    for q in 0..nq {
                        m[(t * nq + r, s * nq + q)] = u[(r, q)];
                    }
                }
            }
            ops.push(m);
        }

        let mut projectors = Vec::with_capacity(outcomes.len());
        for g in 0..outcomes.len() {
            let mut p = CMatrix::zeros(dim, dim);
            for s in 0..ns {
                let block = &self.measurement_at(s).projectors()[g];
                for r in 0..nq {
                    for q in 0..nq {
                        p[(s * nq + r, s * nq + q)] = block[(r, q)];
                    }
                }
            }
            projectors.push(p);
        }

        // |phi0> = |s0> tensor |psi0>
        let mut init = vec![crate::linalg::Complex64::new(0.0, 0.0); dim];
        let s0 = self.start_index();
        for (q, amp) in self.initial().amplitudes().iter().enumerate() {
            init[s0 * nq + q] = *amp;
        }
        let initial = StateVector::new_raw(init).expect("finite");

        LiftedQfac {
            classical_count: ns,
            quantum_dim: nq,
            alphabet,
            outcomes,
            initial,
            ops,
            projectors,
        }
    }
}

#[cfg(test)]
mod tests {

    #[test]
    fn single_classical_state_lift_is_the_plain_machine() {
        let mut rng = crate::random::rng(51);
        let q = crate::random::random_qfac(1, 3, &["0", "1"], 2, &mut rng);
        let l = q.lift();
        assert_eq!(l.dim(), 3);
        for word in ["", "0", "01", "1100"] {
            for g in q.outcomes() {
                let a = q.outcome_prob(word, g).unwrap();
                let b = l.outcome_prob(word, g).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lifted_probabilities_match_direct_on_random_machines() {
        let mut rng = crate::random::rng(52);
        for _ in 0..30 {
            let q = crate::random::random_qfac(4, 3, &["0", "1"], 2, &mut rng);
            let l = q.lift();
            for len in 0..=6usize {
                // sample a handful of words per length
                for _ in 0..4 {
                    let word: Vec<usize> =
                        (0..len).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
                    for g in 0..2 {
                        let a = q.outcome_prob_indices(&word, g);
                        let b = l.outcome_prob_indices(&word, g);
                        assert!((a - b).abs() <= 1e-10, "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn reachable_vectors_are_single_block_products_of_norm_one() {
        let mut rng = crate::random::rng(53);
        let q = crate::random::random_qfac(3, 2, &["0", "1"], 2, &mut rng);
        let l = q.lift();
        for word in [vec![], vec![0], vec![1, 0], vec![0, 0, 1, 1]] {
            let v = l.evolve_indices(&word);
            assert!((v.norm() - 1.0).abs() <= 1e-9);
            assert_eq!(l.occupied_blocks(&v, 1e-12).len(), 1);
        }
    }

    #[test]
    fn evolution_is_sqrt2_lipschitz_on_reachable_vectors() {
        let mut rng = crate::random::rng(54);
        for _ in 0..20 {
            let q = crate::random::random_qfac(3, 2, &["0", "1"], 2, &mut rng);
            let l = q.lift();
            let w1: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
            let w2: Vec<usize> = (0..3).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
            let x: Vec<usize> = (0..5).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
            let phi1 = l.evolve_indices(&w1);
            let phi2 = l.evolve_indices(&w2);
            let mut m1 = phi1.clone();
            let mut m2 = phi2.clone();
            for &c in &x {
                m1 = l.apply_symbol(&m1, c);
                m2 = l.apply_symbol(&m2, c);
            }
            assert!(m1.distance(&m2) <= 2.0_f64.sqrt() * phi1.distance(&phi2) + 1e-9);
        }
    }
}
