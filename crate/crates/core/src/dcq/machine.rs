//! Machine definition and JSON document.

use serde::{Deserialize, Serialize};

use super::{DcqError, Gate, Move, TapeSym};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub gate: Gate,
    pub quantum_move: Move,
    pub write: TapeSym,
    pub classical_move: Move,
    pub next: usize,
}

/// Control states plus the partial transition table. The table must be
/// total on every non-halting state and empty on the halting state.
#[derive(Debug, Clone, PartialEq)]
pub struct DcqMachine {
    states: Vec<String>,
    start: usize,
    halt: usize,
    /// `delta[state][symbol.index()]`
    delta: Vec<Vec<Option<Transition>>>,
}

impl DcqMachine {
    pub fn new(
        states: Vec<String>,
        start: &str,
        halt: &str,
        rows: Vec<(String, TapeSym, Gate, Move, TapeSym, Move, String)>,
    ) -> Result<Self, DcqError> {
        if states.is_empty() {
            return Err(DcqError::InvalidMachine("no states".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(DcqError::InvalidMachine(format!("duplicate state {s:?}")));
            }
        }
        let find = |label: &str| -> Result<usize, DcqError> {
            states
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| DcqError::InvalidMachine(format!("unknown state {label:?}")))
        };
        let start = find(start)?;
        let halt = find(halt)?;
        if start == halt {
            return Err(DcqError::InvalidMachine(
                "start and halt states must differ".into(),
            ));
        }
        let mut delta = vec![vec![None; 3]; states.len()];
        for (from, read, gate, qmove, write, cmove, next) in rows {
            let f = find(&from)?;
            let n = find(&next)?;
            if f == halt {
                return Err(DcqError::InvalidMachine(
                    "the halting state must have no outgoing transitions".into(),
                ));
            }
            if delta[f][read.index()].is_some() {
                return Err(DcqError::InvalidMachine(format!(
                    "duplicate transition for ({from:?}, {:?})",
                    read.to_char()
                )));
            }
            delta[f][read.index()] = Some(Transition {
                gate,
                quantum_move: qmove,
                write,
                classical_move: cmove,
                next: n,
            });
        }
        for (q, row) in delta.iter().enumerate() {
            if q == halt {
                continue;
            }
            for sym in TapeSym::ALL {
                if row[sym.index()].is_none() {
                    return Err(DcqError::InvalidMachine(format!(
                        "missing transition for ({:?}, {:?})",
                        states[q],
                        sym.to_char()
                    )));
                }
            }
        }
        Ok(DcqMachine {
            states,
            start,
            halt,
            delta,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn halt(&self) -> usize {
        self.halt
    }

    pub fn transition(&self, state: usize, read: TapeSym) -> Option<&Transition> {
        self.delta[state][read.index()].as_ref()
    }

    /// Same machine with states renumbered so the start state comes first
    /// and the halting state last; other states keep their relative order.
    pub fn canonical_order(&self) -> DcqMachine {
        let mut order = vec![self.start];
        order.extend((0..self.states.len()).filter(|&q| q != self.start && q != self.halt));
        order.push(self.halt);
        let mut new_index = vec![0usize; self.states.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let states = order.iter().map(|&q| self.states[q].clone()).collect();
        let delta = order
            .iter()
            .map(|&q| {
                self.delta[q]
                    .iter()
                    .map(|t| {
                        t.map(|mut tr| {
                            tr.next = new_index[tr.next];
                            tr
                        })
                    })
                    .collect()
            })
            .collect();
        DcqMachine {
            states,
            start: 0,
            halt: self.states.len() - 1,
            delta,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DcqMachineDoc {
    pub states: Vec<String>,
    pub start: String,
    pub halt: String,
    pub delta: Vec<(String, String, String, String, String, String, String)>,
}

impl From<&DcqMachine> for DcqMachineDoc {
    fn from(m: &DcqMachine) -> Self {
        let mut delta = Vec::new();
        for (q, row) in m.delta.iter().enumerate() {
            for sym in TapeSym::ALL {
                if let Some(t) = row[sym.index()] {
                    delta.push((
                        m.states[q].clone(),
                        sym.to_char().to_string(),
                        t.gate.code().to_string(),
                        t.quantum_move.code().to_string(),
                        t.write.to_char().to_string(),
                        t.classical_move.code().to_string(),
                        m.states[t.next].clone(),
                    ));
                }
            }
        }
        DcqMachineDoc {
            states: m.states.clone(),
            start: m.states[m.start].clone(),
            halt: m.states[m.halt].clone(),
            delta,
        }
    }
}

impl TryFrom<DcqMachineDoc> for DcqMachine {
    type Error = DcqError;

    fn try_from(doc: DcqMachineDoc) -> Result<Self, DcqError> {
        let parse_sym = |s: &str| -> Result<TapeSym, DcqError> {
            if s.chars().count() != 1 {
                return Err(DcqError::InvalidMachine(format!("bad symbol {s:?}")));
            }
            TapeSym::from_char(s.chars().next().unwrap())
                .ok_or_else(|| DcqError::InvalidMachine(format!("bad symbol {s:?}")))
        };
        let rows = doc
            .delta
            .into_iter()
            .map(|(q, a, g, d, a2, d2, q2)| {
                Ok((
                    q,
                    parse_sym(&a)?,
                    Gate::from_code(&g)
                        .ok_or_else(|| DcqError::InvalidMachine(format!("bad gate {g:?}")))?,
                    Move::from_code(&d)
                        .ok_or_else(|| DcqError::InvalidMachine(format!("bad move {d:?}")))?,
                    parse_sym(&a2)?,
                    Move::from_code(&d2)
                        .ok_or_else(|| DcqError::InvalidMachine(format!("bad move {d2:?}")))?,
                    q2,
                ))
            })
            .collect::<Result<Vec<_>, DcqError>>()?;
        DcqMachine::new(doc.states, &doc.start, &doc.halt, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(
        q: &str,
        a: char,
        g: Gate,
        d: Move,
        a2: char,
        d2: Move,
        q2: &str,
    ) -> (String, TapeSym, Gate, Move, TapeSym, Move, String) {
        (
            q.to_string(),
            TapeSym::from_char(a).unwrap(),
            g,
            d,
            TapeSym::from_char(a2).unwrap(),
            d2,
            q2.to_string(),
        )
    }

    #[test]
    fn totality_enforced() {
        let r = DcqMachine::new(
            vec!["qs".into(), "qh".into()],
            "qs",
            "qh",
            vec![row("qs", '_', Gate::Id, Move::Stay, '_', Move::Stay, "qh")],
        );
        assert!(matches!(r, Err(DcqError::InvalidMachine(_))));
    }

    #[test]
    fn halt_state_must_be_silent() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::Id, Move::Stay, a, Move::Stay, "qh"));
        }
        rows.push(row("qh", '_', Gate::Id, Move::Stay, '_', Move::Stay, "qh"));
        let r = DcqMachine::new(vec!["qs".into(), "qh".into()], "qs", "qh", rows);
        assert!(matches!(r, Err(DcqError::InvalidMachine(_))));
    }

    #[test]
    fn doc_round_trip() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::H, Move::Left, '1', Move::Right, "qh"));
        }
        let m = DcqMachine::new(vec!["qs".into(), "qh".into()], "qs", "qh", rows).unwrap();
        let doc = DcqMachineDoc::from(&m);
        let back = DcqMachine::try_from(doc).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn canonical_order_puts_start_first_halt_last() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("mid", a, Gate::Id, Move::Stay, a, Move::Stay, "stop"));
            rows.push(row("go", a, Gate::Id, Move::Stay, a, Move::Stay, "mid"));
        }
        let m = DcqMachine::new(
            vec!["mid".into(), "go".into(), "stop".into()],
            "go",
            "stop",
            rows,
        )
        .unwrap();
        let c = m.canonical_order();
        assert_eq!(c.states(), &["go", "mid", "stop"]);
        assert_eq!(c.start(), 0);
        assert_eq!(c.halt(), 2);
        assert_eq!(c.transition(0, TapeSym::Zero).unwrap().next, 1);
    }
}
