//! Micro-step universal interpreter.
//!
//! The interpreter runs a translated program tape `delta 111 p blank x`
//! exactly the way a fixed universal machine would: it first rewrites the
//! tape into the encoded configuration form (shifting cell by cell), then
//! emulates one source-machine step at a time by walking the tape, parking
//! at the active transition row, applying the row's gate to its own
//! quantum tape, and rewriting the encoded configuration in place. Every
//! primitive action (one read, one write, one head move on either tape,
//! one gate application) bumps the micro-step counter, so the reported
//! cost reflects the tape traffic actually performed.
//!
//! The interpreter keeps region boundaries in ordinary variables instead
//! of dedicated control states; all content decisions are driven by cells
//! it has read and paid for.

use std::collections::HashMap;

use crate::dcq::{
    Configuration, DcqMachine, DcqOutput, Gate, Move, QuantumWindow, SimLimits, TapeSym,
};
use crate::linalg::StateVector;

use super::encode::{
    decode_gate, decode_move, decode_symbol, encode_symbol, plain_symbol, reversed_symbol,
    DecodedConfiguration, EncodedMachine, EncodedTape,
};
use super::SmnError;

struct MicroTape {
    cells: HashMap<i64, TapeSym>,
    head: i64,
    window: QuantumWindow,
    quantum_head: i64,
    cap: usize,
    t: u64,
}

impl MicroTape {
    fn new(word: &[TapeSym], quantum_input: &StateVector, cap: usize) -> Result<Self, SmnError> {
        let mut cells = HashMap::new();
        for (i, &sym) in word.iter().enumerate() {
            if sym != TapeSym::Blank {
                cells.insert(i as i64 + 1, sym);
            }
        }
        Ok(MicroTape {
            cells,
            head: 0,
            window: QuantumWindow::from_state(1, quantum_input)?,
            quantum_head: 0,
            cap,
            t: 0,
        })
    }

    fn move_to(&mut self, pos: i64) {
        self.t += (pos - self.head).unsigned_abs();
        self.head = pos;
    }

    fn read(&mut self) -> TapeSym {
        self.t += 1;
        self.cells.get(&self.head).copied().unwrap_or(TapeSym::Blank)
    }

    fn write(&mut self, sym: TapeSym) {
        self.t += 1;
        if sym == TapeSym::Blank {
            self.cells.remove(&self.head);
        } else {
            self.cells.insert(self.head, sym);
        }
    }

    fn read_at(&mut self, pos: i64) -> TapeSym {
        self.move_to(pos);
        self.read()
    }

    fn write_at(&mut self, pos: i64, sym: TapeSym) {
        self.move_to(pos);
        self.write(sym);
    }

    /// Shifts the cell range `[lo, hi]` right by `k`, blanking the vacated
    /// prefix. Single right-to-left pass per the usual copying walk.
    fn shift_right(&mut self, lo: i64, hi: i64, k: i64) {
        if hi < lo {
            return;
        }
        for pos in (lo..=hi).rev() {
            let v = self.read_at(pos);
            self.write_at(pos + k, v);
        }
        for pos in lo..lo + k.min(hi - lo + 1) {
            self.write_at(pos, TapeSym::Blank);
        }
    }

    /// Shifts the cell range `[lo, hi]` left by `k`, blanking the vacated
    /// suffix.
    fn shift_left(&mut self, lo: i64, hi: i64, k: i64) {
        if hi < lo {
            return;
        }
        for pos in lo..=hi {
            let v = self.read_at(pos);
            self.write_at(pos - k, v);
        }
        for pos in (hi - k.min(hi - lo + 1) + 1)..=hi {
            self.write_at(pos, TapeSym::Blank);
        }
    }

    fn apply_gate(&mut self, gate: Gate) -> Result<(), SmnError> {
        self.t += 1;
        self.window
            .apply_gate(gate, self.quantum_head, self.cap)
            .map_err(SmnError::from)
    }

    fn move_quantum_head(&mut self, m: Move) {
        if m != Move::Stay {
            self.t += 1;
            self.quantum_head += m.offset();
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct RowFields {
    start: i64,
    write: TapeSym,
    classical_move: Move,
    next: usize,
}

#[derive(Debug, Clone)]
pub struct UniversalRun {
    pub output: DcqOutput,
    /// Micro-steps performed by the interpreter tape.
    pub t_steps: u64,
    /// Emulated machine steps.
    pub m_steps: u64,
    /// Decoded classical configuration after each emulated step, when
    /// recording was requested.
    pub boundaries: Vec<DecodedConfiguration>,
}

#[derive(Debug, Clone)]
pub enum UniversalOutcome {
    Halted(Box<UniversalRun>),
    BudgetExceeded { m_steps: u64, t_steps: u64 },
}

impl UniversalOutcome {
    pub fn halted(self) -> Option<UniversalRun> {
        match self {
            UniversalOutcome::Halted(r) => Some(*r),
            UniversalOutcome::BudgetExceeded { .. } => None,
        }
    }
}

struct Interpreter {
    tape: MicroTape,
    /// Length of the encoded transition table.
    table_len: i64,
    nu: usize,
    /// Current emulated state index.
    state: usize,
    /// Cell count of the left word region.
    wlen: i64,
    /// Exclusive end of the right content region.
    rend: i64,
}

impl Interpreter {
    fn state_block_cell(&self, idx: usize) -> i64 {
        -(self.nu as i64 + 2) + idx as i64
    }

    fn wbar_start(&self) -> i64 {
        -(self.nu as i64 + 3) - self.wlen
    }

    /// Stage 0: rewrite `delta 111 p blank x` into the encoded initial
    /// configuration. Shifting is performed cell by cell, so the cost is
    /// quadratic in `|p| + |x|`.
    fn prepare(&mut self, p_len: i64, x_len: i64) {
        let base = self.table_len + 4; // first cell after the 111 separator
        let l = p_len;
        let n = x_len;

        // Encode x by duplicating each bit into the gap opened by shifting
        // the unencoded suffix right.
        let xs = base + l + 1;
        if n > 0 {
            let mut s = xs;
            let mut e = xs + n - 1;
            for _ in 0..n {
                self.tape.shift_right(s + 1, e, 1);
                let v = self.tape.read_at(s);
                self.tape.write_at(s + 1, v);
                s += 2;
                e += 1;
            }
            // Shift the encoded block right once and encode the separator
            // blank into the two vacated cells.
            self.tape.shift_right(xs, xs + 2 * n - 1, 1);
        }
        self.tape.write_at(xs - 1, TapeSym::One);
        self.tape.write_at(xs, TapeSym::Zero);

        // Encode p the same way, growing into a two-cell gap kept open by
        // shifting the already-encoded tail right.
        if l > 0 {
            let tail_lo = base + l;
            let tail_hi = base + l + 1 + 2 * n;
            self.tape.shift_right(tail_lo, tail_hi, 3);
            self.tape.shift_right(base, base + l - 1, 1);
            let mut ue = base + l;
            let mut te = tail_hi + 3;
            for j in 0..l {
                let v = self.tape.read_at(ue);
                let enc = plain_symbol(v);
                self.tape.write_at(ue + 1, enc[0]);
                self.tape.write_at(ue + 2, enc[1]);
                self.tape.write_at(ue, TapeSym::Blank);
                if j + 1 < l {
                    self.tape.shift_right(ue + 1, te, 1);
                    te += 1;
                    ue -= 1;
                }
            }
            self.tape.shift_left(base + 2, te, 2);
        }

        // Reverse the encoded region cell by cell: rotate the first cell to
        // the end, shift the rest left, repeat.
        let len = 2 * (l + n + 1);
        let lo = base;
        let hi = base + len - 1;
        let mut end = hi;
        for _ in 0..len {
            let v = self.tape.read_at(lo);
            self.tape.write_at(end + 1, v);
            self.tape.write_at(lo, TapeSym::Blank);
            self.tape.shift_left(lo + 1, end, 1);
            end -= 1;
        }
        self.tape.shift_left(lo + 1, hi + 1, 1);

        // Append the reversed blank encoding: the head symbol of the
        // initial configuration.
        self.tape.write_at(hi + 1, TapeSym::Zero);
        self.tape.write_at(hi + 2, TapeSym::One);
        self.rend = hi + 3;

        // State block for q0: 1^nu blank 1.
        self.tape.write_at(-1, TapeSym::One);
        self.tape.write_at(-2, TapeSym::Blank);
        for idx in 0..self.nu {
            self.tape.write_at(-3 - idx as i64, TapeSym::One);
        }
        self.tape.move_to(0);
    }

    /// Stage 1: read the head-symbol pair at the right end.
    fn identify_symbol(&mut self) -> Result<TapeSym, SmnError> {
        let a1 = self.tape.read_at(self.rend - 1);
        let a2 = self.tape.read_at(self.rend - 2);
        let bits = format!("{}{}", a1.to_char(), a2.to_char());
        decode_symbol(&bits).ok_or_else(|| {
            SmnError::MalformedEncoding(format!("head symbol cells hold {bits:?}"))
        })
    }

    fn parse_row(&mut self, start: i64) -> Result<RowFields, SmnError> {
        let take = |me: &mut Self, pos: i64, n: i64| -> String {
            let mut s = String::new();
            for k in 0..n {
                s.push(me.tape.read_at(pos + k).to_char());
            }
            s
        };
        let gate_bits = take(self, start, 3);
        decode_gate(&gate_bits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("gate field {gate_bits:?}")))?;
        let qm_bits = take(self, start + 3, 2);
        decode_move(&qm_bits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("move field {qm_bits:?}")))?;
        let wr_bits = take(self, start + 5, 2);
        let write = decode_symbol(&wr_bits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("write field {wr_bits:?}")))?;
        let cm_bits = take(self, start + 7, 2);
        let classical_move = decode_move(&cm_bits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("move field {cm_bits:?}")))?;
        let mut ones = 0i64;
        loop {
            let c = self.tape.read_at(start + 9 + ones);
            match c {
                TapeSym::One => ones += 1,
                TapeSym::Zero => break,
                TapeSym::Blank => {
                    return Err(SmnError::MalformedEncoding(
                        "blank inside a state field".into(),
                    ))
                }
            }
        }
        if ones == 0 {
            return Err(SmnError::MalformedEncoding("empty state field".into()));
        }
        if self.tape.read_at(start + 9 + ones + 1) != TapeSym::Zero {
            return Err(SmnError::MalformedEncoding(
                "state field must end with 00".into(),
            ));
        }
        Ok(RowFields {
            start,
            write,
            classical_move,
            next: (ones - 1) as usize,
        })
    }

    fn row_end(&self, row: &RowFields) -> i64 {
        row.start + 9 + row.next as i64 + 1 + 2
    }

    /// Stage 2: the marker walk. Flips the right run of the state block to
    /// zeros one cell at a time, advancing a two-blank marker one row group
    /// per flip, then parks on the group of the current state. Returns the
    /// parsed rows of that group.
    fn park(&mut self) -> Result<[RowFields; 3], SmnError> {
        let mut marker: Option<i64> = None;
        let mut group: Option<[RowFields; 3]> = None;
        let mut flips = 0usize;
        loop {
            let cell = self.tape.read_at(-1 - flips as i64);
            if cell == TapeSym::Blank {
                break;
            }
            self.tape.write(TapeSym::Zero);
            let group_start = match marker {
                None => 1,
                Some(mp) => {
                    self.tape.write_at(mp, TapeSym::Zero);
                    self.tape.write_at(mp + 1, TapeSym::Zero);
                    mp + 2
                }
            };
            let r0 = self.parse_row(group_start)?;
            let r1 = self.parse_row(self.row_end(&r0))?;
            let r2 = self.parse_row(self.row_end(&r1))?;
            let end = self.row_end(&r2);
            self.tape.write_at(end - 2, TapeSym::Blank);
            self.tape.write_at(end - 1, TapeSym::Blank);
            marker = Some(end - 2);
            group = Some([r0, r1, r2]);
            flips += 1;
        }
        if flips != self.state + 1 {
            return Err(SmnError::MalformedEncoding(format!(
                "state block encodes index {} but the interpreter tracks {}",
                flips.saturating_sub(1),
                self.state
            )));
        }
        // The marker has served its purpose; restore the row terminator.
        let mp = marker.expect("at least one flip");
        self.tape.write_at(mp, TapeSym::Zero);
        self.tape.write_at(mp + 1, TapeSym::Zero);
        Ok(group.expect("at least one group parsed"))
    }

    /// Stages 3-4: re-read the gate and quantum-move fields of the active
    /// row, apply the gate to the interpreter's quantum tape, move its
    /// quantum head.
    fn apply_quantum(&mut self, row: &RowFields) -> Result<(), SmnError> {
        let mut bits = String::new();
        for k in 0..3 {
            bits.push(self.tape.read_at(row.start + k).to_char());
        }
        let gate = decode_gate(&bits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("gate field {bits:?}")))?;
        self.tape.apply_gate(gate)?;
        let mut mbits = String::new();
        for k in 3..5 {
            mbits.push(self.tape.read_at(row.start + k).to_char());
        }
        let qmove = decode_move(&mbits)
            .ok_or_else(|| SmnError::MalformedEncoding(format!("move field {mbits:?}")))?;
        self.tape.move_quantum_head(qmove);
        Ok(())
    }

    /// Stage 5: mark the write field, copy the symbol (bit-swapped) over
    /// the head-symbol cells at the right end, then restore the field.
    fn write_symbol(&mut self, row: &RowFields) {
        let field = row.start + 5;
        let enc = encode_symbol(row.write).as_bytes();
        let b1 = if enc[0] == b'1' {
            TapeSym::One
        } else {
            TapeSym::Zero
        };
        let b2 = if enc[1] == b'1' {
            TapeSym::One
        } else {
            TapeSym::Zero
        };
        self.tape.write_at(field, TapeSym::Blank);
        self.tape.write_at(field + 1, TapeSym::Blank);
        self.tape.write_at(self.rend - 2, b2);
        self.tape.write_at(self.rend - 1, b1);
        self.tape.write_at(field, b1);
        self.tape.write_at(field + 1, b2);
    }

    /// Stage 6: realize the classical head displacement by moving one
    /// symbol pair between the word regions.
    fn shift_classical(&mut self, row: &RowFields) {
        match row.classical_move {
            Move::Stay => {}
            Move::Right => {
                let pa = self.tape.read_at(self.rend - 2);
                let pb = self.tape.read_at(self.rend - 1);
                let dest = self.wbar_start() - 2;
                self.tape.write_at(dest, pb);
                self.tape.write_at(dest + 1, pa);
                self.wlen += 2;
                if self.rend - (self.table_len + 4) > 2 {
                    self.tape.write_at(self.rend - 2, TapeSym::Blank);
                    self.tape.write_at(self.rend - 1, TapeSym::Blank);
                    self.rend -= 2;
                } else {
                    // The right word is empty: the head moved onto a blank.
                    let enc = reversed_symbol(TapeSym::Blank);
                    self.tape.write_at(self.rend - 2, enc[0]);
                    self.tape.write_at(self.rend - 1, enc[1]);
                }
            }
            Move::Left => {
                if self.wlen > 0 {
                    let src = self.wbar_start();
                    let c1 = self.tape.read_at(src);
                    let c2 = self.tape.read_at(src + 1);
                    self.tape.write_at(self.rend, c2);
                    self.tape.write_at(self.rend + 1, c1);
                    self.tape.write_at(src, TapeSym::Blank);
                    self.tape.write_at(src + 1, TapeSym::Blank);
                    self.wlen -= 2;
                    self.rend += 2;
                } else {
                    // The left word is empty: the head moved onto a blank.
                    let enc = reversed_symbol(TapeSym::Blank);
                    self.tape.write_at(self.rend, enc[0]);
                    self.tape.write_at(self.rend + 1, enc[1]);
                    self.rend += 2;
                }
            }
        }
    }

    /// Stage 7 for a non-halting target: blank the 1s of the row's state
    /// field one at a time while rewriting the state block, then restore
    /// the field.
    fn update_state(&mut self, row: &RowFields) {
        let j = row.next;
        let qfield = row.start + 9;
        let plan = |idx: usize| -> TapeSym {
            if idx == self.nu - j {
                TapeSym::Blank
            } else {
                TapeSym::One
            }
        };
        for t in 0..=j {
            self.tape.write_at(qfield + t as i64, TapeSym::Blank);
            let cell = self.state_block_cell(t);
            self.tape.write_at(cell, plan(t));
        }
        for idx in (j + 1)..(self.nu + 2) {
            let cell = self.state_block_cell(idx);
            self.tape.write_at(cell, plan(idx));
        }
        for t in 0..=j {
            self.tape.write_at(qfield + t as i64, TapeSym::One);
        }
        self.state = j;
    }

    /// Stage 7 for the halting target: decode both word regions through a
    /// staging area right of the content, erase the table and state block,
    /// and lay the plain configuration around the head cell.
    fn restore_plain_tape(&mut self) -> Result<(), SmnError> {
        let staging = self.rend + 2;
        let w_syms = (self.wlen / 2) as usize;
        for t in 0..w_syms {
            let pair = -(self.nu as i64 + 3) - 2 - 2 * t as i64;
            let c1 = self.tape.read_at(pair);
            let c2 = self.tape.read_at(pair + 1);
            self.tape.write_at(pair, TapeSym::Blank);
            self.tape.write_at(pair + 1, TapeSym::Blank);
            let bits = format!("{}{}", c1.to_char(), c2.to_char());
            let sym = decode_symbol(&bits).ok_or_else(|| {
                SmnError::MalformedEncoding(format!("left word pair holds {bits:?}"))
            })?;
            self.tape.write_at(staging + t as i64, sym);
        }
        let fold_syms = ((self.rend - (self.table_len + 4)) / 2) as usize;
        let staging2 = staging + w_syms as i64;
        for t in 0..fold_syms {
            let pair = self.rend - 2 - 2 * t as i64;
            let c1 = self.tape.read_at(pair);
            let c2 = self.tape.read_at(pair + 1);
            self.tape.write_at(pair, TapeSym::Blank);
            self.tape.write_at(pair + 1, TapeSym::Blank);
            let bits = format!("{}{}", c2.to_char(), c1.to_char());
            let sym = decode_symbol(&bits).ok_or_else(|| {
                SmnError::MalformedEncoding(format!("right word pair holds {bits:?}"))
            })?;
            self.tape.write_at(staging2 + t as i64, sym);
        }
        for idx in 0..(self.nu + 2) {
            let cell = self.state_block_cell(idx);
            self.tape.write_at(cell, TapeSym::Blank);
        }
        for pos in 1..=(self.table_len + 3) {
            self.tape.write_at(pos, TapeSym::Blank);
        }
        for t in 0..w_syms {
            let sym = self.tape.read_at(staging + t as i64);
            self.tape.write(TapeSym::Blank);
            self.tape.write_at(-((w_syms - t) as i64), sym);
        }
        for t in 0..fold_syms {
            let sym = self.tape.read_at(staging2 + t as i64);
            self.tape.write(TapeSym::Blank);
            self.tape.write_at(t as i64, sym);
        }
        self.tape.move_to(0);
        Ok(())
    }

    /// Observer view of the encoded configuration; not charged.
    fn snapshot(&self) -> EncodedTape {
        let lo = self.wbar_start();
        let hi = self.rend - 1;
        let cells = (lo..=hi)
            .map(|pos| self.tape.cells.get(&pos).copied().unwrap_or(TapeSym::Blank))
            .collect();
        EncodedTape {
            cells,
            head: (-lo) as usize,
        }
    }
}

/// Runs the universal interpreter for machine `m` on program `p` and input
/// `x` (both bitstrings) with quantum input `psi`. The step budget bounds
/// emulated machine steps. With `record_boundaries`, the decoded classical
/// configuration after every emulated step is collected.
pub fn emulate(
    m: &DcqMachine,
    p: &str,
    x: &str,
    psi: &StateVector,
    limits: SimLimits,
    record_boundaries: bool,
) -> Result<UniversalOutcome, SmnError> {
    let em = EncodedMachine::new(m);
    let s_p = em.translate(p)?;
    if !x.chars().all(|c| c == '0' || c == '1') {
        return Err(SmnError::InvalidProgram(format!(
            "inputs are bitstrings, got {x:?}"
        )));
    }
    let mut word: Vec<TapeSym> = crate::dcq::tape_word(&s_p).expect("bits");
    word.push(TapeSym::Blank);
    word.extend(crate::dcq::bits(x).expect("validated"));

    let mut interp = Interpreter {
        tape: MicroTape::new(&word, psi, limits.max_window_qubits)?,
        table_len: em.delta_bits().len() as i64,
        nu: em.nu(),
        state: 0,
        wlen: 0,
        rend: 0,
    };
    interp.prepare(p.len() as i64, x.len() as i64);

    let halt_index = em.nu() + 1;
    let mut m_steps = 0u64;
    let mut boundaries = Vec::new();
    loop {
        if m_steps >= limits.max_steps {
            return Ok(UniversalOutcome::BudgetExceeded {
                m_steps,
                t_steps: interp.tape.t,
            });
        }
        let symbol = interp.identify_symbol()?;
        let group = interp.park()?;
        let row = group[symbol.index()];
        interp.apply_quantum(&row)?;
        interp.write_symbol(&row);
        interp.shift_classical(&row);
        m_steps += 1;
        if row.next == halt_index {
            interp.restore_plain_tape()?;
            let output = Configuration::from_parts(
                interp.tape.cells,
                0,
                interp.tape.window,
                interp.tape.quantum_head,
                halt_index,
                m_steps,
                limits.max_window_qubits,
            )
            .extract_output()?;
            return Ok(UniversalOutcome::Halted(Box::new(UniversalRun {
                output,
                t_steps: interp.tape.t,
                m_steps,
                boundaries,
            })));
        }
        interp.update_state(&row);
        if record_boundaries {
            boundaries.push(super::encode::decode_configuration(&interp.snapshot())?);
        }
    }
}

/// Wraps a machine so that running it on `blank x` behaves like the
/// original on `x`: a fresh start state skips one blank to the right and
/// hands over. One extra control state, independent of the input.
pub fn universality_wrapper(m: &DcqMachine) -> DcqMachine {
    let mut boot = "boot".to_string();
    while m.states().contains(&boot) {
        boot.push('_');
    }
    let mut states = vec![boot.clone()];
    states.extend(m.states().iter().cloned());
    let old_start = m.states()[m.start()].clone();
    let halt = m.states()[m.halt()].clone();
    let mut rows = vec![
        (
            boot.clone(),
            TapeSym::Blank,
            Gate::Id,
            Move::Stay,
            TapeSym::Blank,
            Move::Right,
            old_start,
        ),
        (
            boot.clone(),
            TapeSym::Zero,
            Gate::Id,
            Move::Stay,
            TapeSym::Zero,
            Move::Stay,
            boot.clone(),
        ),
        (
            boot.clone(),
            TapeSym::One,
            Gate::Id,
            Move::Stay,
            TapeSym::One,
            Move::Stay,
            boot.clone(),
        ),
    ];
    for (q, label) in m.states().iter().enumerate() {
        for sym in TapeSym::ALL {
            if let Some(t) = m.transition(q, sym) {
                rows.push((
                    label.clone(),
                    sym,
                    t.gate,
                    t.quantum_move,
                    t.write,
                    t.classical_move,
                    m.states()[t.next].clone(),
                ));
            }
        }
    }
    DcqMachine::new(states, &boot, &halt, rows).expect("wrapper construction is total")
}

/// The universality program for `m`: the wrapped machine together with the
/// translated empty program. Feeding `program blank x` to the interpreter
/// of the wrapped machine reproduces `m` on `x`.
pub fn universality_program(m: &DcqMachine) -> (DcqMachine, String) {
    let wrapped = universality_wrapper(m);
    let em = EncodedMachine::new(&wrapped);
    let program = em.translate("").expect("empty program is a bitstring");
    (wrapped, program)
}
