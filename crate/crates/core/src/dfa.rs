//! Deterministic finite automata: evaluation, minimization, Myhill-Nerode
//! counts, structural pattern detectors, and the concrete language builders
//! used throughout the workbench.
//!
//! States and symbols are labelled strings; internally everything is indexed.
//! The transition map must be total.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfaError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("transition map is not total: missing ({state:?}, {symbol:?})")]
    MissingTransition { state: String, symbol: String },
    #[error("duplicate transition for ({state:?}, {symbol:?})")]
    DuplicateTransition { state: String, symbol: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
}

/// A total deterministic finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    states: Vec<String>,
    alphabet: Vec<String>,
    start: usize,
    accepting: Vec<bool>,
    /// `delta[state][symbol]` -> state
    delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        start: String,
        accepting: Vec<String>,
        transitions: Vec<(String, String, String)>,
    ) -> Result<Self, DfaError> {
        if states.is_empty() {
            return Err(DfaError::InvalidParameter("no states".into()));
        }
        let mut state_idx = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if state_idx.insert(s.clone(), i).is_some() {
                return Err(DfaError::DuplicateLabel(s.clone()));
            }
        }
        let mut sym_idx = HashMap::new();
        for (i, s) in alphabet.iter().enumerate() {
            if sym_idx.insert(s.clone(), i).is_some() {
                return Err(DfaError::DuplicateLabel(s.clone()));
            }
        }
        let start = *state_idx
            .get(&start)
            .ok_or_else(|| DfaError::UnknownState(start.clone()))?;
        let mut acc = vec![false; states.len()];
        for a in accepting {
            let i = *state_idx
                .get(&a)
                .ok_or_else(|| DfaError::UnknownState(a.clone()))?;
            acc[i] = true;
        }
        let mut delta = vec![vec![usize::MAX; alphabet.len()]; states.len()];
        for (from, sym, to) in transitions {
            let f = *state_idx
                .get(&from)
                .ok_or_else(|| DfaError::UnknownState(from.clone()))?;
            let s = *sym_idx
                .get(&sym)
                .ok_or_else(|| DfaError::UnknownSymbol(sym.clone()))?;
            let t = *state_idx
                .get(&to)
                .ok_or_else(|| DfaError::UnknownState(to.clone()))?;
            if delta[f][s] != usize::MAX {
                return Err(DfaError::DuplicateTransition {
                    state: from,
                    symbol: sym,
                });
            }
            delta[f][s] = t;
        }
        for (si, row) in delta.iter().enumerate() {
            for (ci, &t) in row.iter().enumerate() {
                if t == usize::MAX {
                    return Err(DfaError::MissingTransition {
                        state: states[si].clone(),
                        symbol: alphabet[ci].clone(),
                    });
                }
            }
        }
        Ok(Dfa {
            states,
            alphabet,
            start,
            accepting: acc,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start_label(&self) -> &str {
        &self.states[self.start]
    }

    pub fn start_index(&self) -> usize {
        self.start
    }

    pub fn is_accepting_index(&self, i: usize) -> bool {
        self.accepting[i]
    }

    pub fn accepting_labels(&self) -> Vec<String> {
        self.states
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &a)| a)
            .map(|(s, _)| s.clone())
            .collect()
    }

    pub fn symbol_index(&self, symbol: &str) -> Result<usize, DfaError> {
        self.alphabet
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| DfaError::UnknownSymbol(symbol.to_string()))
    }

    pub fn next_index(&self, state: usize, symbol: usize) -> usize {
        self.delta[state][symbol]
    }

    /// Splits a word into one symbol per character and maps to indices.
    pub fn word_indices(&self, word: &str) -> Result<Vec<usize>, DfaError> {
        word.chars()
            .map(|c| self.symbol_index(&c.to_string()))
            .collect()
    }

    /// Runs the extended transition from `from` over symbol indices.
    pub fn run_indices_from(&self, from: usize, word: &[usize]) -> usize {
        let mut s = from;
        for &c in word {
            s = self.delta[s][c];
        }
        s
    }

    /// Runs the automaton on a word (one symbol per character).
    /// Returns the final state label and whether it is accepting.
    pub fn run(&self, word: &str) -> Result<(String, bool), DfaError> {
        let idx = self.word_indices(word)?;
        let s = self.run_indices_from(self.start, &idx);
        Ok((self.states[s].clone(), self.accepting[s]))
    }

    pub fn accepts(&self, word: &str) -> Result<bool, DfaError> {
        Ok(self.run(word)?.1)
    }

    /// States reachable from the start state, in BFS order.
    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen[self.start] = true;
        queue.push_back(self.start);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// The minimal DFA for this automaton's language, built by partition
    /// refinement over the reachable states. Each block keeps the label of
    /// its first-listed member state.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let mut local = vec![usize::MAX; self.states.len()];
        for (i, &s) in reach.iter().enumerate() {
            local[s] = i;
        }
        let n = reach.len();
        let k = self.alphabet.len();
        // block[i] for local state i; start from the accept/reject split.
        let mut block: Vec<usize> = reach
            .iter()
            .map(|&s| usize::from(self.accepting[s]))
            .collect();
        let mut block_count = block.iter().copied().max().unwrap_or(0) + 1;
        loop {
            // Signature of a state: (its block, blocks of its successors).
            let mut sig_map: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_block = vec![0usize; n];
            let mut next_count = 0usize;
            for i in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(block[i]);
                for c in 0..k {
                    sig.push(block[local[self.delta[reach[i]][c]]]);
                }
                let id = *sig_map.entry(sig).or_insert_with(|| {
                    let id = next_count;
                    next_count += 1;
                    id
                });
                next_block[i] = id;
            }
            if next_count == block_count {
                block = next_block;
                break;
            }
            block = next_block;
            block_count = next_count;
        }
        // Representative of each block: the reachable state seen first.
        let mut rep: Vec<usize> = vec![usize::MAX; block_count];
        for (i, &b) in block.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = i;
            }
        }
        // Order blocks by representative BFS position for a stable layout.
        let mut order: Vec<usize> = (0..block_count).collect();
        order.sort_by_key(|&b| rep[b]);
        let mut new_id = vec![0usize; block_count];
        for (new, &b) in order.iter().enumerate() {
            new_id[b] = new;
        }
        let states: Vec<String> = order
            .iter()
            .map(|&b| self.states[reach[rep[b]]].clone())
            .collect();
        let accepting = order
            .iter()
            .map(|&b| self.accepting[reach[rep[b]]])
            .collect();
        let delta = order
            .iter()
            .map(|&b| {
                (0..k)
                    .map(|c| new_id[block[local[self.delta[reach[rep[b]]][c]]]])
                    .collect()
            })
            .collect();
        Dfa {
            states,
            alphabet: self.alphabet.clone(),
            start: new_id[block[local[self.start]]],
            accepting,
            delta,
        }
    }

    /// Number of right-congruence classes of the language, i.e. the state
    /// count of the minimal DFA.
    pub fn nerode_class_count(&self) -> usize {
        self.minimize().state_count()
    }

    /// Shortest word (as symbol indices) driving the pair `(a, b)` to the
    /// pair `target` under the synchronized product; `None` if unreachable.
    fn pair_bfs(&self, a: usize, b: usize, target: (usize, usize)) -> Option<Vec<usize>> {
        let n = self.states.len();
        let enc = |p: usize, q: usize| p * n + q;
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::new();
        seen[enc(a, b)] = true;
        queue.push_back((a, b));
        if (a, b) == target {
            return Some(Vec::new());
        }
        while let Some((p, q)) = queue.pop_front() {
            for c in 0..self.alphabet.len() {
                let np = self.delta[p][c];
                let nq = self.delta[q][c];
                if !seen[enc(np, nq)] {
                    seen[enc(np, nq)] = true;
                    prev[enc(np, nq)] = Some((enc(p, q), c));
                    if (np, nq) == target {
                        let mut word = Vec::new();
                        let mut cur = enc(np, nq);
                        while let Some((parent, sym)) = prev[cur] {
                            word.push(sym);
                            cur = parent;
                        }
                        word.reverse();
                        return Some(word);
                    }
                    queue.push_back((np, nq));
                }
            }
        }
        None
    }

    /// Shortest non-empty word returning the pair `(a, b)` to itself.
    fn pair_cycle(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for c in 0..self.alphabet.len() {
            let np = self.delta[a][c];
            let nq = self.delta[b][c];
            if let Some(rest) = self.pair_bfs(np, nq, (a, b)) {
                let mut word = vec![c];
                word.extend(rest);
                match &best {
                    Some(b) if b.len() <= word.len() => {}
                    _ => best = Some(word),
                }
            }
        }
        best
    }

    /// Shortest word from `from` to `to`; `require_nonempty` forbids the
    /// empty word even when `from == to`.
    fn state_bfs(&self, from: usize, to: usize, require_nonempty: bool) -> Option<Vec<usize>> {
        if from == to && !require_nonempty {
            return Some(Vec::new());
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.states.len()];
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::new();
        // Seed with one-step successors so the empty path is never returned.
        for c in 0..self.alphabet.len() {
            let t = self.delta[from][c];
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((usize::MAX, c));
                queue.push_back(t);
            }
        }
        let unwind = |prev: &[Option<(usize, usize)>], mut cur: usize| {
            let mut word = Vec::new();
            while let Some((parent, sym)) = prev[cur] {
                word.push(sym);
                if parent == usize::MAX {
                    break;
                }
                cur = parent;
            }
            word.reverse();
            word
        };
        if seen[to] {
            // May have been reached in the seeding step.
        }
        while let Some(s) = queue.pop_front() {
            if s == to {
                return Some(unwind(&prev, s));
            }
            for c in 0..self.alphabet.len() {
                let t = self.delta[s][c];
                if !seen[t] {
                    seen[t] = true;
                    prev[t] = Some((s, c));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortest word on which exactly one of `p`, `q` ends accepting
    /// (the empty word when they already disagree).
    fn distinguishing_word(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        if self.accepting[p] != self.accepting[q] {
            return Some(Vec::new());
        }
        let n = self.states.len();
        let enc = |a: usize, b: usize| a * n + b;
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n * n];
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::new();
        seen[enc(p, q)] = true;
        queue.push_back((p, q));
        while let Some((a, b)) = queue.pop_front() {
            for c in 0..self.alphabet.len() {
                let na = self.delta[a][c];
                let nb = self.delta[b][c];
                if !seen[enc(na, nb)] {
                    seen[enc(na, nb)] = true;
                    prev[enc(na, nb)] = Some((enc(a, b), c));
                    if self.accepting[na] != self.accepting[nb] {
                        let mut word = Vec::new();
                        let mut cur = enc(na, nb);
                        while let Some((parent, sym)) = prev[cur] {
                            word.push(sym);
                            if parent == enc(p, q) {
                                break;
                            }
                            cur = parent;
                        }
                        word.reverse();
                        return Some(word);
                    }
                    queue.push_back((na, nb));
                }
            }
        }
        None
    }

    fn labels_of(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&c| self.alphabet[c].clone()).collect()
    }
}

/// Structural witness: distinct states `q1`, `q2` with a word `z` merging
/// both into `q2` and a word `t` fixing each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FConstructionWitness {
    pub q1: String,
    pub q2: String,
    pub z: Vec<String>,
    pub t: Vec<String>,
}

impl std::fmt::Display for FConstructionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} z={} t={}",
            self.q1,
            self.q2,
            self.z.join(""),
            self.t.join("")
        )
    }
}

/// Structural witness: states `p`, `q` with `p -x-> q`, `q -x-> q`,
/// `q -y-> p`, and a word `z` on which exactly one of them accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fig3Witness {
    pub p: String,
    pub q: String,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
}

impl std::fmt::Display for Fig3Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "p={} q={} x={} y={} z={}",
            self.p,
            self.q,
            self.x.join(""),
            self.y.join(""),
            if self.z.is_empty() {
                "(empty)".to_string()
            } else {
                self.z.join("")
            }
        )
    }
}

/// Searches the minimal DFA of `d`'s language for a merge/fixpoint pattern:
/// distinct `q1`, `q2` and non-empty `z`, `t` with
/// `d*(q1,z) = d*(q2,z) = q2`, `d*(q1,t) = q1`, `d*(q2,t) = q2`.
///
/// Pairs are scanned in state order; each word comes from a shortest-path
/// search over the synchronized pair graph, so word lengths are bounded by
/// the square of the state count.
pub fn detect_f_construction(d: &Dfa) -> Option<FConstructionWitness> {
    let m = d.minimize();
    let n = m.state_count();
    for q1 in 0..n {
        for q2 in 0..n {
            if q1 == q2 {
                continue;
            }
            let Some(z) = m.pair_bfs(q1, q2, (q2, q2)) else {
                continue;
            };
            if z.is_empty() {
                continue;
            }
            let Some(t) = m.pair_cycle(q1, q2) else {
                continue;
            };
            return Some(FConstructionWitness {
                q1: m.states[q1].clone(),
                q2: m.states[q2].clone(),
                z: m.labels_of(&z),
                t: m.labels_of(&t),
            });
        }
    }
    None
}

/// Searches the minimal DFA of `d`'s language for the two-state loop/return
/// pattern with distinguishable endpoints.
pub fn detect_fig3_construction(d: &Dfa) -> Option<Fig3Witness> {
    let m = d.minimize();
    let n = m.state_count();
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let Some(x) = m.pair_bfs(p, q, (q, q)) else {
                continue;
            };
            if x.is_empty() {
                continue;
            }
            let Some(y) = m.state_bfs(q, p, true) else {
                continue;
            };
            // In a minimal DFA distinct states are always distinguishable,
            // but the witness carries the word anyway.
            let Some(z) = m.distinguishing_word(p, q) else {
                continue;
            };
            return Some(Fig3Witness {
                p: m.states[p].clone(),
                q: m.states[q].clone(),
                x: m.labels_of(&x),
                y: m.labels_of(&y),
                z: m.labels_of(&z),
            });
        }
    }
    None
}

/// Builders for the concrete language families exercised by the workbench.
pub mod languages {
    use super::{Dfa, DfaError};

    fn binary() -> Vec<String> {
        vec!["0".to_string(), "1".to_string()]
    }

    /// Words over {0,1} that end in 0 and have length a positive multiple
    /// of `m`. States form a length-counting chain `q0..q(m-1)` plus the
    /// accepting state `qm` entered from `q(m-1)` on a final 0.
    pub fn l0m(m: u64) -> Result<Dfa, DfaError> {
        if m < 2 {
            return Err(DfaError::InvalidParameter(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        let m = m as usize;
        let states: Vec<String> = (0..=m).map(|i| format!("q{i}")).collect();
        let mut delta = Vec::new();
        for i in 0..m.saturating_sub(1) {
            for sym in ["0", "1"] {
                delta.push((states[i].clone(), sym.to_string(), states[i + 1].clone()));
            }
        }
        delta.push((states[m - 1].clone(), "0".to_string(), states[m].clone()));
        delta.push((states[m - 1].clone(), "1".to_string(), states[0].clone()));
        for sym in ["0", "1"] {
            delta.push((states[m].clone(), sym.to_string(), states[1].clone()));
        }
        Dfa::new(
            states.clone(),
            binary(),
            states[0].clone(),
            vec![states[m].clone()],
            delta,
        )
    }

    /// Words over {0,1} that end in 0.
    pub fn l0() -> Dfa {
        Dfa::new(
            vec!["q0".into(), "q1".into()],
            binary(),
            "q0".into(),
            vec!["q1".into()],
            vec![
                ("q0".into(), "0".into(), "q1".into()),
                ("q0".into(), "1".into(), "q0".into()),
                ("q1".into(), "0".into(), "q1".into()),
                ("q1".into(), "1".into(), "q0".into()),
            ],
        )
        .expect("fixed table")
    }

    /// Words over {0,1} whose length is a positive multiple of `m`.
    pub fn lm(m: u64) -> Result<Dfa, DfaError> {
        if m < 2 {
            return Err(DfaError::InvalidParameter(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        let m = m as usize;
        let states: Vec<String> = (0..=m).map(|i| format!("q{i}")).collect();
        let mut delta = Vec::new();
        for i in 0..m {
            for sym in ["0", "1"] {
                delta.push((states[i].clone(), sym.to_string(), states[i + 1].clone()));
            }
        }
        for sym in ["0", "1"] {
            delta.push((states[m].clone(), sym.to_string(), states[1].clone()));
        }
        Dfa::new(
            states.clone(),
            binary(),
            states[0].clone(),
            vec![states[m].clone()],
            delta,
        )
    }

    /// Words containing `z` as a (scattered) subsequence. One state per
    /// matched prefix of `z`. The alphabet is {0,1} united with the symbols
    /// of `z`.
    pub fn lz(z: &str) -> Result<Dfa, DfaError> {
        if z.is_empty() {
            return Err(DfaError::InvalidParameter(
                "subsequence must be non-empty".into(),
            ));
        }
        let zsyms: Vec<String> = z.chars().map(|c| c.to_string()).collect();
        let mut alphabet = binary();
        for s in &zsyms {
            if !alphabet.contains(s) {
                alphabet.push(s.clone());
            }
        }
        let n = zsyms.len();
        let states: Vec<String> = (0..=n).map(|i| format!("r{i}")).collect();
        let mut delta = Vec::new();
        for i in 0..n {
            for sym in &alphabet {
                let to = if *sym == zsyms[i] { i + 1 } else { i };
                delta.push((states[i].clone(), sym.clone(), states[to].clone()));
            }
        }
        for sym in &alphabet {
            delta.push((states[n].clone(), sym.clone(), states[n].clone()));
        }
        Dfa::new(
            states.clone(),
            alphabet,
            states[0].clone(),
            vec![states[n].clone()],
            delta,
        )
    }

    /// Words containing `z` as a subsequence whose length is a positive
    /// multiple of `m`. States `S(i,j)` track the matched prefix length `i`
    /// (0..=n) and the length counter `j` (1..=m); `S(0,1)` starts,
    /// `S(n,1)` accepts.
    pub fn lzm(z: &str, m: u64) -> Result<Dfa, DfaError> {
        if z.is_empty() {
            return Err(DfaError::InvalidParameter(
                "subsequence must be non-empty".into(),
            ));
        }
        if m < 2 {
            return Err(DfaError::InvalidParameter(format!(
                "modulus must be at least 2, got {m}"
            )));
        }
        let m = m as usize;
        let zsyms: Vec<String> = z.chars().map(|c| c.to_string()).collect();
        let mut alphabet = binary();
        for s in &zsyms {
            if !alphabet.contains(s) {
                alphabet.push(s.clone());
            }
        }
        let n = zsyms.len();
        let name = |i: usize, j: usize| format!("S{i}_{j}");
        let mut states = Vec::new();
        for i in 0..=n {
            for j in 1..=m {
                states.push(name(i, j));
            }
        }
        let mut delta = Vec::new();
        for i in 0..=n {
            for j in 1..=m {
                let nj = (j % m) + 1;
                for sym in &alphabet {
                    let ni = if i == n {
                        n
                    } else if *sym == zsyms[i] {
                        i + 1
                    } else {
                        i
                    };
                    delta.push((name(i, j), sym.clone(), name(ni, nj)));
                }
            }
        }
        Dfa::new(states, alphabet, name(0, 1), vec![name(n, 1)], delta)
    }

    /// Words over {0,1} of even positive length containing at least one 0.
    pub fn l0_2() -> Dfa {
        let t = |a: &str, s: &str, b: &str| (a.to_string(), s.to_string(), b.to_string());
        Dfa::new(
            vec!["q0".into(), "q1".into(), "q2".into(), "q3".into()],
            binary(),
            "q0".into(),
            vec!["q3".into()],
            vec![
                t("q0", "0", "q2"),
                t("q0", "1", "q1"),
                t("q1", "0", "q3"),
                t("q1", "1", "q0"),
                t("q2", "0", "q3"),
                t("q2", "1", "q3"),
                t("q3", "0", "q2"),
                t("q3", "1", "q2"),
            ],
        )
        .expect("fixed table")
    }
}

// ---------------------------------------------------------------------------
// JSON document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DfaDoc {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub start: String,
    pub accepting: Vec<String>,
    pub delta: Vec<(String, String, String)>,
}

impl From<&Dfa> for DfaDoc {
    fn from(d: &Dfa) -> Self {
        let mut delta = Vec::new();
        for (si, row) in d.delta.iter().enumerate() {
            for (ci, &t) in row.iter().enumerate() {
                delta.push((
                    d.states[si].clone(),
                    d.alphabet[ci].clone(),
                    d.states[t].clone(),
                ));
            }
        }
        DfaDoc {
            states: d.states.clone(),
            alphabet: d.alphabet.clone(),
            start: d.states[d.start].clone(),
            accepting: d.accepting_labels(),
            delta,
        }
    }
}

impl TryFrom<DfaDoc> for Dfa {
    type Error = DfaError;
    fn try_from(doc: DfaDoc) -> Result<Self, DfaError> {
        Dfa::new(doc.states, doc.alphabet, doc.start, doc.accepting, doc.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::languages::*;
    use super::*;

    #[test]
    fn l0m_accepts_by_definition() {
        let d = l0m(3).unwrap();
        assert!(d.accepts("010").unwrap());
        assert!(!d.accepts("").unwrap());
        assert!(!d.accepts("011").unwrap());
        assert!(!d.accepts("0100").unwrap());
        assert!(d.accepts("010110").unwrap());
    }

    #[test]
    fn l0m_matches_membership_predicate_exhaustively() {
        for m in [2u64, 3, 4, 5] {
            let d = l0m(m).unwrap();
            for len in 0..=10usize {
                for w in 0..(1u32 << len) {
                    let word: String = (0..len)
                        .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                        .collect();
                    let member = len > 0 && len % m as usize == 0 && word.ends_with('0');
                    assert_eq!(d.accepts(&word).unwrap(), member, "m={m} w={word:?}");
                }
            }
        }
    }

    #[test]
    fn l0m_structure_for_m2() {
        let d = l0m(2).unwrap();
        assert_eq!(d.states(), &["q0", "q1", "q2"]);
        assert_eq!(d.accepting_labels(), vec!["q2".to_string()]);
        assert_eq!(d.run("00").unwrap(), ("q2".to_string(), true));
        assert_eq!(d.run("01").unwrap(), ("q0".to_string(), false));
    }

    #[test]
    fn l0_is_fig4() {
        let d = l0();
        assert_eq!(d.state_count(), 2);
        assert!(d.accepts("0").unwrap());
        assert!(d.accepts("110").unwrap());
        assert!(!d.accepts("01").unwrap());
        assert!(!d.accepts("").unwrap());
    }

    #[test]
    fn lzm_small_cases() {
        let d = lzm("0", 2).unwrap();
        assert!(d.accepts("10").unwrap());
        assert!(d.accepts("00").unwrap());
        assert!(!d.accepts("11").unwrap());
        assert!(!d.accepts("0").unwrap());
        assert!(!d.accepts("").unwrap());
    }

    #[test]
    fn lzm_agrees_with_membership_predicate() {
        let d = lzm("01", 2).unwrap();
        for len in 0..=8usize {
            for w in 0..(1u32 << len) {
                let word: String = (0..len)
                    .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                let subseq = {
                    let mut matched = 0;
                    for ch in word.chars() {
                        if matched < 2 && ch == ['0', '1'][matched] {
                            matched += 1;
                        }
                    }
                    matched == 2
                };
                let member = len > 0 && len % 2 == 0 && subseq;
                assert_eq!(d.accepts(&word).unwrap(), member, "w={word:?}");
            }
        }
    }

    #[test]
    fn minimize_counts_match_the_families() {
        for m in [2u64, 3, 5, 7] {
            assert_eq!(l0m(m).unwrap().minimize().state_count(), m as usize + 1);
        }
        // subsequence-with-length family: m(n+1) states
        assert_eq!(lzm("0", 2).unwrap().minimize().state_count(), 4);
        assert_eq!(lzm("0", 3).unwrap().minimize().state_count(), 6);
        assert_eq!(lzm("01", 2).unwrap().minimize().state_count(), 6);
        assert_eq!(lzm("10", 3).unwrap().minimize().state_count(), 9);
        assert_eq!(l0_2().minimize().state_count(), 4);
    }

    #[test]
    fn nerode_counts() {
        assert_eq!(l0m(5).unwrap().nerode_class_count(), 6);
        assert_eq!(l0_2().nerode_class_count(), 4);
        let all = Dfa::new(
            vec!["s".into()],
            vec!["0".into(), "1".into()],
            "s".into(),
            vec!["s".into()],
            vec![
                ("s".into(), "0".into(), "s".into()),
                ("s".into(), "1".into(), "s".into()),
            ],
        )
        .unwrap();
        assert_eq!(all.nerode_class_count(), 1);
    }

    #[test]
    fn minimize_is_idempotent_and_language_preserving() {
        for d in [l0m(3).unwrap(), l0_2(), lzm("0", 2).unwrap(), l0()] {
            let m = d.minimize();
            assert_eq!(m.minimize().state_count(), m.state_count());
            for len in 0..=10usize {
                for w in 0..(1u32 << len) {
                    let word: String = (0..len)
                        .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                        .collect();
                    assert_eq!(d.accepts(&word).unwrap(), m.accepts(&word).unwrap());
                }
            }
        }
    }

    #[test]
    fn f_construction_on_l0_2_matches_known_witness() {
        let w = detect_f_construction(&l0_2()).expect("witness expected");
        assert_eq!(w.q1, "q0");
        assert_eq!(w.q2, "q3");
        assert_eq!(w.z.join(""), "00");
        assert_eq!(w.t.join(""), "11");
    }

    #[test]
    fn f_construction_witness_invariants_hold() {
        for d in [l0_2(), lzm("0", 2).unwrap(), lzm("10", 2).unwrap()] {
            let m = d.minimize();
            let w = detect_f_construction(&d).expect("witness expected");
            let q1 = m.states().iter().position(|s| *s == w.q1).unwrap();
            let q2 = m.states().iter().position(|s| *s == w.q2).unwrap();
            let z: Vec<usize> = w.z.iter().map(|s| m.symbol_index(s).unwrap()).collect();
            let t: Vec<usize> = w.t.iter().map(|s| m.symbol_index(s).unwrap()).collect();
            assert!(!z.is_empty() && !t.is_empty());
            assert_eq!(m.run_indices_from(q1, &z), q2);
            assert_eq!(m.run_indices_from(q2, &z), q2);
            assert_eq!(m.run_indices_from(q1, &t), q1);
            assert_eq!(m.run_indices_from(q2, &t), q2);
        }
    }

    #[test]
    fn permutation_automata_have_no_f_construction() {
        // Cycle automaton: every symbol acts as the same cyclic permutation.
        for n in [2usize, 3, 5] {
            let states: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
            let mut delta = Vec::new();
            for i in 0..n {
                for sym in ["0", "1"] {
                    delta.push((
                        states[i].clone(),
                        sym.to_string(),
                        states[(i + 1) % n].clone(),
                    ));
                }
            }
            let d = Dfa::new(
                states.clone(),
                vec!["0".into(), "1".into()],
                states[0].clone(),
                vec![states[0].clone()],
                delta,
            )
            .unwrap();
            assert!(detect_f_construction(&d).is_none());
        }
    }

    #[test]
    fn fig3_on_l0m_matches_known_witness() {
        for m in [2u64, 3, 4] {
            let w = detect_fig3_construction(&l0m(m).unwrap()).expect("witness expected");
            assert_eq!(w.p, "q0");
            assert_eq!(w.q, format!("q{m}"));
            assert_eq!(w.x.join(""), "0".repeat(m as usize));
            assert_eq!(w.y.join(""), format!("{}1", "0".repeat(m as usize - 1)));
            assert!(w.z.is_empty());
        }
    }

    #[test]
    fn fig3_witness_invariants_hold() {
        for d in [l0m(3).unwrap(), l0m(5).unwrap()] {
            let m = d.minimize();
            let w = detect_fig3_construction(&d).expect("witness expected");
            let p = m.states().iter().position(|s| *s == w.p).unwrap();
            let q = m.states().iter().position(|s| *s == w.q).unwrap();
            let x: Vec<usize> = w.x.iter().map(|s| m.symbol_index(s).unwrap()).collect();
            let y: Vec<usize> = w.y.iter().map(|s| m.symbol_index(s).unwrap()).collect();
            let z: Vec<usize> = w.z.iter().map(|s| m.symbol_index(s).unwrap()).collect();
            assert!(!x.is_empty() && !y.is_empty());
            assert_eq!(m.run_indices_from(p, &x), q);
            assert_eq!(m.run_indices_from(q, &x), q);
            assert_eq!(m.run_indices_from(q, &y), p);
            let pa = m.is_accepting_index(m.run_indices_from(p, &z));
            let qa = m.is_accepting_index(m.run_indices_from(q, &z));
            assert_ne!(pa, qa);
        }
    }

    #[test]
    fn fig3_needs_two_states() {
        let single = Dfa::new(
            vec!["s".into()],
            vec!["a".into()],
            "s".into(),
            vec![],
            vec![("s".into(), "a".into(), "s".into())],
        )
        .unwrap();
        assert!(detect_fig3_construction(&single).is_none());
        assert!(detect_f_construction(&single).is_none());
    }

    #[test]
    fn l0_2_has_no_fig3_pattern() {
        // Once a 0 has been read the automaton stays inside {q2, q3}, so no
        // merge target q admits a return word y back to p: the pattern is
        // structurally impossible here even though an F-construction exists.
        assert!(detect_fig3_construction(&l0_2()).is_none());
    }

    #[test]
    fn l0m_has_no_f_construction() {
        // The only merging pairs are {q0, qm}; after the merge word both
        // product components coincide forever, so no word can fix the pair
        // and the t-word required by the pattern cannot exist.
        for m in [2u64, 3, 5, 7] {
            assert!(detect_f_construction(&l0m(m).unwrap()).is_none());
        }
    }

    #[test]
    fn unknown_symbol_is_an_error() {
        let d = l0();
        assert!(matches!(d.accepts("2"), Err(DfaError::UnknownSymbol(_))));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(matches!(
            l0m(1),
            Err(DfaError::InvalidParameter(_))
        ));
        assert!(matches!(lzm("", 2), Err(DfaError::InvalidParameter(_))));
    }

    #[test]
    fn partial_tables_rejected() {
        let r = Dfa::new(
            vec!["a".into(), "b".into()],
            vec!["0".into()],
            "a".into(),
            vec![],
            vec![("a".into(), "0".into(), "b".into())],
        );
        assert!(matches!(r, Err(DfaError::MissingTransition { .. })));
    }

    #[test]
    fn doc_round_trip() {
        let d = l0m(3).unwrap();
        let doc = DfaDoc::from(&d);
        let back = Dfa::try_from(doc).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn minimize_drops_unreachable_states() {
        let d = Dfa::new(
            vec!["a".into(), "b".into(), "dead".into()],
            vec!["0".into()],
            "a".into(),
            vec!["b".into(), "dead".into()],
            vec![
                ("a".into(), "0".into(), "b".into()),
                ("b".into(), "0".into(), "a".into()),
                ("dead".into(), "0".into(), "dead".into()),
            ],
        )
        .unwrap();
        assert_eq!(d.minimize().state_count(), 2);
    }
}
