//! Machine constructions: embedding a DFA into a hybrid automaton, set
//! operations between a DFA and a measure-once automaton, and the compact
//! rotation-based acceptor for length-divisibility languages.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::dfa::{languages, Dfa, DfaError};
use crate::linalg::{CMatrix, LinalgError, StateVector, UnitaryOperator};
use crate::qfa::{Mo1Qfa, Provenance, Qfac, QfaError, ACCEPT, REJECT};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("alphabet mismatch between the classical and quantum factors")]
    AlphabetMismatch,
    #[error("multiplier search exhausted for modulus {modulus} at target error {eps}: best achieved {best:.6}")]
    SearchExhausted { modulus: u64, eps: f64, best: f64 },
    #[error(transparent)]
    Qfa(#[from] QfaError),
    #[error(transparent)]
    Dfa(#[from] DfaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Embeds a DFA as a hybrid automaton with a single quantum basis state:
/// the classical part is copied verbatim, every unitary is the identity,
/// and the per-state measurement accepts exactly on the accepting states.
/// Acceptance probability is exactly 1 on the language and 0 off it.
pub fn qfac_from_dfa(d: &Dfa) -> Qfac {
    let one = CMatrix::identity(1);
    let zero = CMatrix::zeros(1, 1);
    let mut delta = Vec::new();
    let mut unitaries = Vec::new();
    let mut measurements = Vec::new();
    for (si, s) in d.states().iter().enumerate() {
        for (ci, c) in d.alphabet().iter().enumerate() {
            delta.push((
                s.clone(),
                c.clone(),
                d.states()[d.next_index(si, ci)].clone(),
            ));
            unitaries.push((s.clone(), c.clone(), UnitaryOperator::identity(1)));
        }
        let accept_here = d.is_accepting_index(si);
        measurements.push((
            s.clone(),
            ACCEPT.to_string(),
            if accept_here { one.clone() } else { zero.clone() },
        ));
        measurements.push((
            s.clone(),
            REJECT.to_string(),
            if accept_here { zero.clone() } else { one.clone() },
        ));
    }
    Qfac::new(
        d.states().to_vec(),
        vec!["0".to_string()],
        d.alphabet().to_vec(),
        vec![ACCEPT.to_string(), REJECT.to_string()],
        d.start_label().to_string(),
        StateVector::scalar_one(),
        delta,
        unitaries,
        measurements,
    )
    .expect("a total DFA always lifts")
    .with_provenance(Provenance {
        lambda: Some(0.5),
        ..Provenance::default()
    })
}

/// Set operation realized by a classical/quantum product machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    /// words in both languages
    Intersect,
    /// words in either language
    Union,
    /// words accepted by the DFA but not the quantum factor
    DfaMinusMo,
    /// words accepted by the quantum factor but not the DFA
    MoMinusDfa,
}

impl SetOp {
    pub fn parse(s: &str) -> Option<SetOp> {
        match s {
            "intersect" => Some(SetOp::Intersect),
            "union" => Some(SetOp::Union),
            "diff-dm" => Some(SetOp::DfaMinusMo),
            "diff-md" => Some(SetOp::MoMinusDfa),
            _ => None,
        }
    }
}

/// Product machine: classical part from `d`, quantum part from `a`, the
/// same per-symbol unitary in every classical state, and the accepting
/// projector selected per classical state according to the operation.
/// The result has exactly `d.state_count()` classical states and
/// `a.dim()` quantum basis states.
pub fn compose_setop(d: &Dfa, a: &Mo1Qfa, op: SetOp) -> Result<Qfac, ConstructionError> {
    let mut alpha_d: Vec<&String> = d.alphabet().iter().collect();
    let mut alpha_a: Vec<&String> = a.alphabet().iter().collect();
    alpha_d.sort();
    alpha_a.sort();
    if alpha_d != alpha_a {
        return Err(ConstructionError::AlphabetMismatch);
    }
    let dim = a.dim();
    let identity = CMatrix::identity(dim);
    let p_acc = a.accept_projector().clone();
    let p_acc_comp = identity.sub(&p_acc);
    let zero = CMatrix::zeros(dim, dim);

    let mut delta = Vec::new();
    let mut unitaries = Vec::new();
    let mut measurements = Vec::new();
    for (si, s) in d.states().iter().enumerate() {
        for (ci, c) in d.alphabet().iter().enumerate() {
            delta.push((
                s.clone(),
                c.clone(),
                d.states()[d.next_index(si, ci)].clone(),
            ));
            unitaries.push((
                s.clone(),
                c.clone(),
                a.unitary(c).expect("alphabets match").clone(),
            ));
        }
        let in_f = d.is_accepting_index(si);
        let accept_proj = match (op, in_f) {
            (SetOp::Intersect, true) => p_acc.clone(),
            (SetOp::Intersect, false) => zero.clone(),
            (SetOp::Union, true) => identity.clone(),
            (SetOp::Union, false) => p_acc.clone(),
            (SetOp::DfaMinusMo, true) => p_acc_comp.clone(),
            (SetOp::DfaMinusMo, false) => zero.clone(),
            (SetOp::MoMinusDfa, true) => zero.clone(),
            (SetOp::MoMinusDfa, false) => p_acc.clone(),
        };
        let reject_proj = identity.sub(&accept_proj);
        measurements.push((s.clone(), ACCEPT.to_string(), accept_proj));
        measurements.push((s.clone(), REJECT.to_string(), reject_proj));
    }
    Ok(Qfac::new(
        d.states().to_vec(),
        a.basis().to_vec(),
        d.alphabet().to_vec(),
        vec![ACCEPT.to_string(), REJECT.to_string()],
        d.start_label().to_string(),
        a.initial().clone(),
        delta,
        unitaries,
        measurements,
    )?)
}

/// Rotation-based acceptor for {words whose length is divisible by m}.
///
/// One two-dimensional rotation block per multiplier k in K, each turning
/// by 2*pi*k/m per input symbol (every symbol acts identically). The
/// machine measures along the uniform superposition of the block cosine
/// components, realized by conjugating everything with a fixed orthogonal
/// basis change so that the accepting set is a single basis state.
/// Acceptance after n symbols is ((1/d) * sum_i cos(2 pi k_i n / m))^2:
/// exactly 1 at n = 0 mod m, and at most `achieved_eps` elsewhere.
#[derive(Debug, Clone)]
pub struct DivisibilityAutomaton {
    modulus: u64,
    multipliers: Vec<u64>,
    achieved_eps: f64,
    machine: Mo1Qfa,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `((1/d) * sum_i cos(2 pi k_i n / m))^2`, with the length reduced mod m
/// first so multiples of m hit angle zero exactly.
pub fn divisibility_accept_prob(modulus: u64, multipliers: &[u64], length: u64) -> f64 {
    let d = multipliers.len() as f64;
    let sum: f64 = multipliers
        .iter()
        .map(|&k| {
            let r = (k % modulus) * (length % modulus) % modulus;
            (2.0 * std::f64::consts::PI * r as f64 / modulus as f64).cos()
        })
        .sum();
    (sum / d).powi(2)
}

fn max_error_over_residues(modulus: u64, multipliers: &[u64]) -> f64 {
    (1..modulus)
        .map(|r| divisibility_accept_prob(modulus, multipliers, r))
        .fold(0.0, f64::max)
}

/// Orthogonal matrix whose first row is `first` (a unit vector), completed
/// with Gram-Schmidt against standard basis vectors.
fn orthogonal_with_first_row(first: &[f64]) -> CMatrix {
    let n = first.len();
    let mut rows: Vec<Vec<f64>> = vec![first.to_vec()];
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut v = vec![0.0; n];
        v[j] = 1.0;
        for _ in 0..2 {
            for r in rows.iter() {
                let dot: f64 = r.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, rv) in v.iter_mut().zip(r) {
                    *x -= dot * rv;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            for x in &mut v {
                *x /= norm;
            }
            rows.push(v);
        }
    }
    assert_eq!(rows.len(), n, "completion failed");
    let mut m = CMatrix::zeros(n, n);
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            m[(r, c)] = Complex64::new(x, 0.0);
        }
    }
    m
}

impl DivisibilityAutomaton {
    /// Randomized multiplier search with a deterministic seed; doubles the
    /// block count until the exhaustive residue sweep certifies an error
    /// below `eps`. The half-set {1..(m-1)/2} is the final candidate (its
    /// error is 1/(m-1)^2), so the search fails only when `eps` is below
    /// that floor.
    pub fn build(
        modulus: u64,
        eps: f64,
        seed: u64,
        alphabet: &[String],
    ) -> Result<Self, ConstructionError> {
        if !is_prime(modulus) || modulus < 3 {
            return Err(ConstructionError::InvalidParameter(format!(
                "modulus must be an odd prime >= 3, got {modulus}"
            )));
        }
        if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
            return Err(ConstructionError::InvalidParameter(format!(
                "target error must lie in (0, 1), got {eps}"
            )));
        }
        if alphabet.is_empty() {
            return Err(ConstructionError::InvalidParameter(
                "alphabet must be non-empty".into(),
            ));
        }
        let mut rng = crate::random::rng(seed);
        let d_max = ((modulus - 1) / 2) as usize;
        let mut best = f64::INFINITY;
        let mut d = 1usize;
        const TRIES_PER_SIZE: usize = 200;
        loop {
            for _ in 0..TRIES_PER_SIZE {
                let mut pool: Vec<u64> = (1..modulus).collect();
                for i in (1..pool.len()).rev() {
                    let j = rng.gen_range(0..=i);
                    pool.swap(i, j);
                }
                let mut multipliers: Vec<u64> = pool.into_iter().take(d).collect();
                multipliers.sort_unstable();
                let err = max_error_over_residues(modulus, &multipliers);
                best = best.min(err);
                if err < eps {
                    return Ok(Self::from_multipliers(modulus, multipliers, err, alphabet));
                }
            }
            if d == d_max {
                let half: Vec<u64> = (1..=d_max as u64).collect();
                let err = max_error_over_residues(modulus, &half);
                best = best.min(err);
                if err < eps {
                    return Ok(Self::from_multipliers(modulus, half, err, alphabet));
                }
                return Err(ConstructionError::SearchExhausted {
                    modulus,
                    eps,
                    best,
                });
            }
            d = (d * 2).min(d_max);
        }
    }

    fn from_multipliers(
        modulus: u64,
        multipliers: Vec<u64>,
        achieved_eps: f64,
        alphabet: &[String],
    ) -> Self {
        let d = multipliers.len();
        let dim = 2 * d;
        // Block-diagonal rotation, one block per multiplier.
        let mut rotation = CMatrix::zeros(dim, dim);
        for (i, &k) in multipliers.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / modulus as f64;
            let (s, c) = angle.sin_cos();
            rotation[(2 * i, 2 * i)] = Complex64::new(c, 0.0);
            rotation[(2 * i, 2 * i + 1)] = Complex64::new(-s, 0.0);
            rotation[(2 * i + 1, 2 * i)] = Complex64::new(s, 0.0);
            rotation[(2 * i + 1, 2 * i + 1)] = Complex64::new(c, 0.0);
        }
        // Measurement direction: uniform superposition of the cosine
        // components. Conjugate so it becomes the first basis vector.
        let mut direction = vec![0.0; dim];
        for i in 0..d {
            direction[2 * i] = 1.0 / (d as f64).sqrt();
        }
        let w = orthogonal_with_first_row(&direction);
        let wt = w.adjoint();
        let conjugated = w.mul_mat(&rotation).and_then(|m| m.mul_mat(&wt)).unwrap();
        let unitary = UnitaryOperator::new(conjugated).expect("orthogonal conjugation");
        let basis: Vec<String> = (0..dim).map(|i| format!("e{i}")).collect();
        let machine = Mo1Qfa::new(
            basis,
            alphabet.to_vec(),
            StateVector::basis(dim, 0),
            alphabet
                .iter()
                .map(|s| (s.clone(), unitary.clone()))
                .collect(),
            vec!["e0".to_string()],
        )
        .expect("valid by construction")
        .with_provenance(Provenance {
            modulus: Some(modulus),
            multipliers: Some(multipliers.clone()),
            achieved_eps: Some(achieved_eps),
            lambda: Some(0.5),
        });
        DivisibilityAutomaton {
            modulus,
            multipliers,
            achieved_eps,
            machine,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn achieved_eps(&self) -> f64 {
        self.achieved_eps
    }

    pub fn machine(&self) -> &Mo1Qfa {
        &self.machine
    }

    pub fn into_machine(self) -> Mo1Qfa {
        self.machine
    }

    /// Closed-form acceptance probability at a given word length.
    pub fn accept_prob_at_length(&self, length: u64) -> f64 {
        divisibility_accept_prob(self.modulus, &self.multipliers, length)
    }
}

/// Acceptor for {words over {0,1} ending in 0 with length a positive
/// multiple of m}: the two-state end-in-0 DFA intersected with the
/// rotation acceptor. Two classical states; zero error on members, below
/// `eps` elsewhere.
pub fn l0m_acceptor(modulus: u64, eps: f64, seed: u64) -> Result<Qfac, ConstructionError> {
    let dfa = languages::l0();
    let div = DivisibilityAutomaton::build(modulus, eps, seed, dfa.alphabet())?;
    let achieved = div.achieved_eps();
    let multipliers = div.multipliers().to_vec();
    let q = compose_setop(&dfa, div.machine(), SetOp::Intersect)?;
    Ok(q.with_provenance(Provenance {
        modulus: Some(modulus),
        multipliers: Some(multipliers),
        achieved_eps: Some(achieved),
        lambda: Some(0.5),
    }))
}

/// Acceptor for {words containing z as a subsequence with length a
/// positive multiple of m}: the (|z|+1)-state subsequence DFA intersected
/// with the rotation acceptor. |z|+1 classical states, independent of m.
pub fn lzm_acceptor(z: &str, modulus: u64, eps: f64, seed: u64) -> Result<Qfac, ConstructionError> {
    let dfa = languages::lz(z)?;
    let div = DivisibilityAutomaton::build(modulus, eps, seed, dfa.alphabet())?;
    let achieved = div.achieved_eps();
    let multipliers = div.multipliers().to_vec();
    let q = compose_setop(&dfa, div.machine(), SetOp::Intersect)?;
    Ok(q.with_provenance(Provenance {
        modulus: Some(modulus),
        multipliers: Some(multipliers),
        achieved_eps: Some(achieved),
        lambda: Some(0.5),
    }))
}
