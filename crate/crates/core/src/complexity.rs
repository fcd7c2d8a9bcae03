//! State-complexity machinery: the sphere-packing count bound and the
//! lower-bound audit relating a hybrid automaton's state counts to the
//! Myhill-Nerode class count of its language.
//!
//! The audit treats the asymptotic statement as the concrete inequality
//! `m <= (1 + sqrt(2)/eps)^(2 k n)` from its derivation, checks it in log
//! space, spot-checks the claimed acceptance margin, and verifies that
//! reachable folded vectors belonging to different right-congruence
//! classes stay at least `sqrt(2) * eps` apart.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dfa::Dfa;
use crate::linalg::StateVector;
use crate::qfa::{Qfac, QfaError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexityError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("machine and reference alphabets differ")]
    AlphabetMismatch,
    #[error("margin violated on word {word:?}: accept probability {probability} vs threshold {lambda} +- {epsilon} (member: {member})")]
    MarginViolated {
        word: String,
        probability: f64,
        lambda: f64,
        epsilon: f64,
        member: bool,
    },
    #[error("reachable-vector enumeration exceeded {0} nodes")]
    EnumerationTooLarge(usize),
    #[error(transparent)]
    Qfa(#[from] QfaError),
}

/// `(1 + 2/theta)^(2n)`: an upper bound on how many unit vectors in an
/// n-dimensional complex space can be pairwise `theta`-separated.
pub fn sphere_packing_bound(theta: f64, n: u32) -> Result<f64, ComplexityError> {
    if !(theta > 0.0) {
        return Err(ComplexityError::InvalidParameter(format!(
            "separation must be positive, got {theta}"
        )));
    }
    if n < 1 {
        return Err(ComplexityError::InvalidParameter(
            "dimension must be at least 1".into(),
        ));
    }
    Ok((1.0 + 2.0 / theta).powi(2 * n as i32))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AuditReport {
    /// Right-congruence class count of the reference language.
    pub nerode_classes: usize,
    pub classical_states: usize,
    pub quantum_states: usize,
    pub epsilon: f64,
    pub lambda: f64,
    /// `(1 + sqrt(2)/epsilon)^(2 k n)`; may overflow to infinity.
    pub bound: f64,
    /// Natural log of the bound, always finite.
    pub bound_log: f64,
    /// Whether `nerode_classes <= bound` (checked in log space).
    pub bound_holds: bool,
    /// `sqrt(2) * epsilon`.
    pub required_distance: f64,
    /// Smallest distance between reachable folded vectors in different
    /// classes; absent when fewer than two classes were reached.
    pub min_cross_distance: Option<f64>,
    pub distance_holds: bool,
    /// Words used for the margin spot-check.
    pub words_checked: usize,
    /// Distinct (vector, class) nodes enumerated.
    pub vectors_enumerated: usize,
    /// Depth bound of the enumeration.
    pub max_word_length: usize,
}

fn quantize(v: &StateVector) -> Vec<(i64, i64)> {
    v.amplitudes()
        .iter()
        .map(|z| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64))
        .collect()
}

const SPOT_CHECK_MAX_LEN: usize = 12;
const SPOT_CHECK_MAX_WORDS: usize = 50_000;
const ENUMERATION_NODE_CAP: usize = 200_000;

/// Audits `machine` against `reference` (assumed to describe the same
/// language, decided with two-sided margin `epsilon` around the threshold).
///
/// The threshold comes from `lambda_override`, else the machine's
/// provenance metadata, else 1/2. The margin is spot-checked on all words
/// up to a bounded length; a violation aborts the audit.
pub fn audit_lower_bound(
    machine: &Qfac,
    reference: &Dfa,
    epsilon: f64,
    lambda_override: Option<f64>,
) -> Result<AuditReport, ComplexityError> {
    if !(epsilon > 0.0) || epsilon > 1.0 {
        return Err(ComplexityError::InvalidParameter(format!(
            "margin must lie in (0, 1], got {epsilon}"
        )));
    }
    let lambda = lambda_override
        .or_else(|| machine.provenance().and_then(|p| p.lambda))
        .unwrap_or(0.5);
    let mut alpha_m: Vec<&String> = machine.alphabet().iter().collect();
    let mut alpha_r: Vec<&String> = reference.alphabet().iter().collect();
    alpha_m.sort();
    alpha_r.sort();
    if alpha_m != alpha_r {
        return Err(ComplexityError::AlphabetMismatch);
    }

    let minimal = reference.minimize();
    let classes = minimal.state_count();
    let k = machine.classical_count();
    let n = machine.quantum_dim();

    let bound_log = 2.0 * (k * n) as f64 * (1.0 + 2.0_f64.sqrt() / epsilon).ln();
    let bound = bound_log.exp();
    let bound_holds = (classes as f64).ln() <= bound_log + 1e-12;

    // Margin spot-check over bounded-length words, breadth-first by length.
    let nc = machine.alphabet().len();
    let map_to_ref: Vec<usize> = machine
        .alphabet()
        .iter()
        .map(|s| minimal.symbol_index(s).expect("alphabets match"))
        .collect();
    let spot_len = SPOT_CHECK_MAX_LEN.min(2 * classes);
    let mut words_checked = 0usize;
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    'spot: for _len in 0..=spot_len {
        let mut next = Vec::new();
        for word in &frontier {
            let p = machine.accept_prob_indices(word)?;
            let ref_state = minimal.run_indices_from(
                minimal.start_index(),
                &word.iter().map(|&c| map_to_ref[c]).collect::<Vec<_>>(),
            );
            let member = minimal.is_accepting_index(ref_state);
            let ok = if member {
                p >= lambda + epsilon - 1e-9
            } else {
                p <= lambda - epsilon + 1e-9
            };
            if !ok {
                let shown: String = word
                    .iter()
                    .map(|&c| machine.alphabet()[c].clone())
                    .collect();
                return Err(ComplexityError::MarginViolated {
                    word: shown,
                    probability: p,
                    lambda,
                    epsilon,
                    member,
                });
            }
            words_checked += 1;
            if words_checked >= SPOT_CHECK_MAX_WORDS {
                break 'spot;
            }
            for c in 0..nc {
                let mut w = word.clone();
                w.push(c);
                next.push(w);
            }
        }
        frontier = next;
    }

    // Reachable folded vectors, grouped by right-congruence class of the
    // word that produced them. Nodes are deduplicated on (vector, class),
    // which keeps the search finite whenever the reachable vector set is.
    let lifted = machine.lift();
    let max_word_length = 2 * classes;
    let mut seen: HashMap<(Vec<(i64, i64)>, usize), StateVector> = HashMap::new();
    let mut queue: VecDeque<(StateVector, usize, usize)> = VecDeque::new();
    let init = lifted.initial().clone();
    seen.insert((quantize(&init), minimal.start_index()), init.clone());
    queue.push_back((init, minimal.start_index(), 0));
    while let Some((v, class, depth)) = queue.pop_front() {
        if depth >= max_word_length {
            continue;
        }
        for c in 0..nc {
            let child = lifted.apply_symbol(&v, c);
            let child_class = minimal.next_index(class, map_to_ref[c]);
            let key = (quantize(&child), child_class);
            if !seen.contains_key(&key) {
                if seen.len() >= ENUMERATION_NODE_CAP {
                    return Err(ComplexityError::EnumerationTooLarge(ENUMERATION_NODE_CAP));
                }
                seen.insert(key, child.clone());
                queue.push_back((child, child_class, depth + 1));
            }
        }
    }
    let nodes: Vec<(&usize, &StateVector)> = seen.iter().map(|((_, c), v)| (c, v)).collect();
    let mut min_cross: Option<f64> = None;
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if nodes[i].0 != nodes[j].0 {
                let d = nodes[i].1.distance(nodes[j].1);
                min_cross = Some(min_cross.map_or(d, |m: f64| m.min(d)));
            }
        }
    }
    let required_distance = 2.0_f64.sqrt() * epsilon;
    let distance_holds = match min_cross {
        Some(d) => d >= required_distance - 1e-9,
        None => true,
    };

    Ok(AuditReport {
        nerode_classes: classes,
        classical_states: k,
        quantum_states: n,
        epsilon,
        lambda,
        bound,
        bound_log,
        bound_holds,
        required_distance,
        min_cross_distance: min_cross,
        distance_holds,
        words_checked,
        vectors_enumerated: seen.len(),
        max_word_length,
    })
}

impl AuditReport {
    /// Comma-separated row matching [`AuditReport::csv_header`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.12},{:.12},{:.6e},{},{:.12},{},{}",
            self.nerode_classes,
            self.classical_states,
            self.quantum_states,
            self.epsilon,
            self.lambda,
            self.bound,
            self.bound_holds,
            self.required_distance,
            self.min_cross_distance
                .map_or("".to_string(), |d| format!("{d:.12}")),
            self.distance_holds,
        )
    }

    pub fn csv_header() -> &'static str {
        "nerode_classes,classical_states,quantum_states,epsilon,lambda,bound,bound_holds,required_distance,min_cross_distance,distance_holds"
    }
}
