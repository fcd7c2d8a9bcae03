//! Seeded random generators for states, unitaries, measurements and machines.
//!
//! Every generator takes an explicit RNG so that callers (tests, benches,
//! the multiplier search in `constructions`) stay reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dfa::Dfa;
use crate::linalg::{CMatrix, ProjectiveMeasurement, StateVector, UnitaryOperator};
use crate::qfa::{Mo1Qfa, Qfac};

/// Reproducible RNG from a plain seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Uniform random unit vector (Gaussian entries, normalized).
pub fn random_state(dim: usize, rng: &mut impl Rng) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let amps = amps.into_iter().map(|z| z / norm).collect();
            return StateVector::new(amps).expect("normalized by construction");
        }
    }
}

/// Haar-ish random unitary via Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> UnitaryOperator {
    'outer: loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        for _ in 0..dim {
            let mut v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
            // Two orthogonalization passes keep the defect well under 1e-12.
            for _ in 0..2 {
                for prev in &cols {
                    let overlap: Complex64 =
                        prev.iter().zip(&v).map(|(p, x)| p.conj() * x).sum();
                    for (x, p) in v.iter_mut().zip(prev) {
                        *x -= overlap * p;
                    }
                }
            }
            let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                continue 'outer;
            }
            for x in &mut v {
                *x /= norm;
            }
            cols.push(v);
        }
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (c, col) in cols.iter().enumerate() {
            for (r, z) in col.iter().enumerate() {
                data[r * dim + c] = *z;
            }
        }
        let m = CMatrix::new(dim, dim, data).expect("finite");
        if let Ok(u) = UnitaryOperator::new(m) {
            return u;
        }
    }
}

/// Random complete measurement with `parts` outcomes labelled `0..parts`.
///
/// Built from the column spans of a random unitary, so the family is exactly
/// orthogonal and complete up to rounding.
pub fn random_measurement(dim: usize, parts: usize, rng: &mut impl Rng) -> ProjectiveMeasurement {
    assert!(parts >= 1 && parts <= dim);
    let u = random_unitary(dim, rng);
    // Split column indices into `parts` non-empty groups.
    let mut cuts: Vec<usize> = (1..dim).collect();
    for i in (1..cuts.len()).rev() {
        let j = rng.gen_range(0..=i);
        cuts.swap(i, j);
    }
    let mut chosen: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    chosen.sort_unstable();
    chosen.push(dim);
    let mut projectors = Vec::with_capacity(parts);
    let mut start = 0usize;
    for &end in &chosen {
        let mut p = CMatrix::zeros(dim, dim);
        for k in start..end {
            for r in 0..dim {
                for c in 0..dim {
                    let vr = u.matrix()[(r, k)];
                    let vc = u.matrix()[(c, k)];
                    p[(r, c)] += vr * vc.conj();
                }
            }
        }
        projectors.push(p);
        start = end;
    }
    let outcomes = (0..parts).map(|i| i.to_string()).collect();
    ProjectiveMeasurement::new(outcomes, projectors).expect("orthogonal by construction")
}

/// Random total DFA over the given alphabet.
pub fn random_dfa(n_states: usize, alphabet: &[&str], rng: &mut impl Rng) -> Dfa {
    assert!(n_states >= 1);
    let states: Vec<String> = (0..n_states).map(|i| format!("s{i}")).collect();
    let mut delta = Vec::new();
    for s in 0..n_states {
        for sym in alphabet {
            let t = rng.gen_range(0..n_states);
            delta.push((states[s].clone(), sym.to_string(), states[t].clone()));
        }
    }
    let accepting: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    Dfa::new(
        states.clone(),
        alphabet.iter().map(|s| s.to_string()).collect(),
        states[0].clone(),
        accepting,
        delta,
    )
    .expect("total by construction")
}

/// Random measure-once automaton with `dim` basis states.
pub fn random_mo1qfa(dim: usize, alphabet: &[&str], rng: &mut impl Rng) -> Mo1Qfa {
    let basis: Vec<String> = (0..dim).map(|i| format!("e{i}")).collect();
    let initial = random_state(dim, rng);
    let unitaries = alphabet
        .iter()
        .map(|s| (s.to_string(), random_unitary(dim, rng)))
        .collect();
    // Keep the accepting set proper and non-empty so the automaton is not
    // trivially constant.
    let cut = rng.gen_range(1..dim.max(2));
    let accepting: Vec<String> = basis.iter().take(cut.min(dim)).cloned().collect();
    Mo1Qfa::new(
        basis,
        alphabet.iter().map(|s| s.to_string()).collect(),
        initial,
        unitaries,
        accepting,
    )
    .expect("valid by construction")
}

/// Random hybrid automaton with classical and quantum parts.
pub fn random_qfac(
    n_classical: usize,
    n_quantum: usize,
    alphabet: &[&str],
    n_outcomes: usize,
    rng: &mut impl Rng,
) -> Qfac {
    let classical: Vec<String> = (0..n_classical).map(|i| format!("s{i}")).collect();
    let basis: Vec<String> = (0..n_quantum).map(|i| format!("e{i}")).collect();
    let outcomes: Vec<String> = (0..n_outcomes).map(|i| format!("g{i}")).collect();
    let initial = random_state(n_quantum, rng);
    let mut delta = Vec::new();
    let mut unitaries = Vec::new();
    for s in &classical {
        for sym in alphabet {
            let t = rng.gen_range(0..n_classical);
            delta.push((s.clone(), sym.to_string(), classical[t].clone()));
            unitaries.push((s.clone(), sym.to_string(), random_unitary(n_quantum, rng)));
        }
    }
    let mut measurements = Vec::new();
    for s in &classical {
        let m = random_measurement(n_quantum, n_outcomes.min(n_quantum).max(1), rng);
        // Pad with zero projectors when there are more labels than blocks.
        for (i, outcome) in outcomes.iter().enumerate() {
            let p = if i < m.projectors().len() {
                m.projectors()[i].clone()
            } else {
                CMatrix::zeros(n_quantum, n_quantum)
            };
            measurements.push((s.clone(), outcome.clone(), p));
        }
    }
    Qfac::new(
        classical.clone(),
        basis,
        alphabet.iter().map(|s| s.to_string()).collect(),
        outcomes,
        classical[0].clone(),
        initial,
        delta,
        unitaries,
        measurements,
    )
    .expect("valid by construction")
}
