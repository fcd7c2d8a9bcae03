//! Bit-level encodings: gates, moves, symbols, states, whole transition
//! tables, and full classical configurations of an emulated machine.
//!
//! A machine with states q0..q_{v+1} (start first, halt last) is encoded
//! as the concatenation of its transition rows in state-major, symbol
//! (0, 1, blank) order. Each row is gate(3) move(2) write(2) move(2)
//! followed by the target state as 1^(j+1) 00. The row stream is
//! terminated by 111, which cannot open a row since no gate encodes to it.

use super::SmnError;
use crate::dcq::{DcqMachine, Gate, Move, TapeSym, Transition};

pub fn encode_gate(g: Gate) -> &'static str {
    match g {
        Gate::Id => "000",
        Gate::H => "001",
        Gate::S => "010",
        Gate::T => "011",
        Gate::Swap => "100",
        Gate::Cnot => "101",
    }
}

pub fn decode_gate(bits: &str) -> Option<Gate> {
    match bits {
        "000" => Some(Gate::Id),
        "001" => Some(Gate::H),
        "010" => Some(Gate::S),
        "011" => Some(Gate::T),
        "100" => Some(Gate::Swap),
        "101" => Some(Gate::Cnot),
        _ => None,
    }
}

pub fn encode_move(m: Move) -> &'static str {
    match m {
        Move::Left => "00",
        Move::Stay => "01",
        Move::Right => "11",
    }
}

pub fn decode_move(bits: &str) -> Option<Move> {
    match bits {
        "00" => Some(Move::Left),
        "01" => Some(Move::Stay),
        "11" => Some(Move::Right),
        _ => None,
    }
}

pub fn encode_symbol(a: TapeSym) -> &'static str {
    match a {
        TapeSym::Zero => "00",
        TapeSym::One => "11",
        TapeSym::Blank => "10",
    }
}

pub fn decode_symbol(bits: &str) -> Option<TapeSym> {
    match bits {
        "00" => Some(TapeSym::Zero),
        "11" => Some(TapeSym::One),
        "10" => Some(TapeSym::Blank),
        _ => None,
    }
}

/// `1^(j+1) 00`.
pub fn encode_state(j: usize) -> String {
    let mut s = "1".repeat(j + 1);
    s.push_str("00");
    s
}

fn encode_transition(t: &Transition) -> String {
    let mut row = String::new();
    row.push_str(encode_gate(t.gate));
    row.push_str(encode_move(t.quantum_move));
    row.push_str(encode_symbol(t.write));
    row.push_str(encode_move(t.classical_move));
    row.push_str(&encode_state(t.next));
    row
}

/// A machine together with its canonical state order and bit encoding.
#[derive(Debug, Clone)]
pub struct EncodedMachine {
    machine: DcqMachine,
    delta_bits: String,
    constant: usize,
}

impl EncodedMachine {
    pub fn new(m: &DcqMachine) -> Self {
        let machine = m.canonical_order();
        let mut delta_bits = String::new();
        for q in 0..machine.state_count() - 1 {
            for sym in TapeSym::ALL {
                let t = machine
                    .transition(q, sym)
                    .expect("total on non-halting states");
                delta_bits.push_str(&encode_transition(t));
            }
        }
        let constant = delta_bits.len() + 3;
        EncodedMachine {
            machine,
            delta_bits,
            constant,
        }
    }

    /// The machine in canonical state order (start first, halt last).
    pub fn machine(&self) -> &DcqMachine {
        &self.machine
    }

    pub fn delta_bits(&self) -> &str {
        &self.delta_bits
    }

    /// The additive translation constant `|delta_bits| + 3`.
    pub fn constant(&self) -> usize {
        self.constant
    }

    /// Number of non-halting states minus one (states are q0..q_{nu+1}).
    pub fn nu(&self) -> usize {
        self.machine.state_count() - 2
    }

    /// The program translation `p -> delta_bits 111 p`.
    pub fn translate(&self, p: &str) -> Result<String, SmnError> {
        if !p.chars().all(|c| c == '0' || c == '1') {
            return Err(SmnError::InvalidProgram(format!(
                "programs are bitstrings, got {p:?}"
            )));
        }
        let mut s = String::with_capacity(self.constant + p.len());
        s.push_str(&self.delta_bits);
        s.push_str("111");
        s.push_str(p);
        Ok(s)
    }
}

struct BitReader<'a> {
    bits: &'a [u8],
    pos: usize,
}

impl<'a> BitReader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a str, SmnError> {
        if self.pos + n > self.bits.len() {
            return Err(SmnError::MalformedEncoding(
                "truncated transition table".into(),
            ));
        }
        let s = std::str::from_utf8(&self.bits[self.pos..self.pos + n]).expect("ascii bits");
        self.pos += n;
        Ok(s)
    }

    fn peek3_is_terminator(&self) -> bool {
        self.bits.len() >= self.pos + 3 && &self.bits[self.pos..self.pos + 3] == b"111"
    }

    fn at_end(&self) -> bool {
        self.pos == self.bits.len()
    }
}

fn parse_row(r: &mut BitReader) -> Result<(Gate, Move, TapeSym, Move, usize), SmnError> {
    let gate = decode_gate(r.take(3)?)
        .ok_or_else(|| SmnError::MalformedEncoding("bad gate field".into()))?;
    let qmove = decode_move(r.take(2)?)
        .ok_or_else(|| SmnError::MalformedEncoding("bad quantum move field".into()))?;
    let write = decode_symbol(r.take(2)?)
        .ok_or_else(|| SmnError::MalformedEncoding("bad write field".into()))?;
    let cmove = decode_move(r.take(2)?)
        .ok_or_else(|| SmnError::MalformedEncoding("bad classical move field".into()))?;
    let mut ones = 0usize;
    loop {
        match r.take(1)? {
            "1" => ones += 1,
            "0" => break,
            _ => unreachable!(),
        }
    }
    if ones == 0 {
        return Err(SmnError::MalformedEncoding(
            "state field must start with a 1".into(),
        ));
    }
    if r.take(1)? != "0" {
        return Err(SmnError::MalformedEncoding(
            "state field must end with 00".into(),
        ));
    }
    Ok((gate, qmove, write, cmove, ones - 1))
}

/// Reconstructs a machine from its table bits; states get synthetic names
/// q0..q_{v+1}. Inverse of [`EncodedMachine::delta_bits`].
pub fn decode_transition_table(bits: &str) -> Result<DcqMachine, SmnError> {
    if !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(SmnError::MalformedEncoding(
            "table must be a bitstring".into(),
        ));
    }
    let mut reader = BitReader {
        bits: bits.as_bytes(),
        pos: 0,
    };
    let mut rows = Vec::new();
    while !reader.at_end() && !reader.peek3_is_terminator() {
        rows.push(parse_row(&mut reader)?);
    }
    if !reader.at_end() {
        return Err(SmnError::MalformedEncoding(
            "trailing bits after the table".into(),
        ));
    }
    if rows.is_empty() || rows.len() % 3 != 0 {
        return Err(SmnError::MalformedEncoding(format!(
            "row count {} is not a positive multiple of three",
            rows.len()
        )));
    }
    let non_halting = rows.len() / 3;
    let states: Vec<String> = (0..=non_halting).map(|i| format!("q{i}")).collect();
    let mut table_rows = Vec::new();
    for (idx, (gate, qmove, write, cmove, next)) in rows.into_iter().enumerate() {
        if next > non_halting {
            return Err(SmnError::MalformedEncoding(format!(
                "target state q{next} out of range"
            )));
        }
        let q = idx / 3;
        let sym = TapeSym::ALL[idx % 3];
        table_rows.push((
            states[q].clone(),
            sym,
            gate,
            qmove,
            write,
            cmove,
            states[next].clone(),
        ));
    }
    DcqMachine::new(states.clone(), &states[0], &states[non_halting], table_rows)
        .map_err(|e| SmnError::MalformedEncoding(format!("decoded table invalid: {e}")))
}

// ---------------------------------------------------------------------------
// Configuration encoding
// ---------------------------------------------------------------------------

/// Two-cell symbol encoding with the bits swapped.
pub fn reversed_symbol(a: TapeSym) -> [TapeSym; 2] {
    let e = encode_symbol(a).as_bytes();
    [bit_sym(e[1]), bit_sym(e[0])]
}

/// Two-cell symbol encoding in plain bit order.
pub fn plain_symbol(a: TapeSym) -> [TapeSym; 2] {
    let e = encode_symbol(a).as_bytes();
    [bit_sym(e[0]), bit_sym(e[1])]
}

fn bit_sym(b: u8) -> TapeSym {
    if b == b'1' {
        TapeSym::One
    } else {
        TapeSym::Zero
    }
}

/// A finite tape excerpt with a head index into it.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedTape {
    pub cells: Vec<TapeSym>,
    pub head: usize,
}

/// Lays out the classical configuration `(w, q_i, a, w')` of the encoded
/// machine as an interpreter tape:
///
/// ```text
/// enc(w_m)..enc(w_1) _ 1^(nu-i) _ 1^(i+1) [_] delta 111 rev(a w')
/// ```
///
/// where the left region stores `w` in reversed word order with plain
/// two-bit symbol encodings and the right region stores the head symbol
/// and `w'` as one folded string `a w'`, last symbol first, each symbol
/// as its bit-swapped two-bit encoding.
pub fn encode_configuration(
    em: &EncodedMachine,
    w: &[TapeSym],
    state_index: usize,
    head_symbol: TapeSym,
    w_prime: &[TapeSym],
) -> Result<EncodedTape, SmnError> {
    let nu = em.nu();
    if state_index > nu {
        return Err(SmnError::MalformedEncoding(format!(
            "state index {state_index} exceeds the last non-halting state {nu}"
        )));
    }
    let mut cells = Vec::new();
    for sym in w.iter().rev() {
        cells.extend_from_slice(&plain_symbol(*sym));
    }
    cells.push(TapeSym::Blank);
    cells.extend(std::iter::repeat_n(TapeSym::One, nu - state_index));
    cells.push(TapeSym::Blank);
    cells.extend(std::iter::repeat_n(TapeSym::One, state_index + 1));
    let head = cells.len();
    cells.push(TapeSym::Blank);
    cells.extend(em.delta_bits().bytes().map(bit_sym));
    cells.extend(std::iter::repeat_n(TapeSym::One, 3));
    let mut folded = vec![head_symbol];
    folded.extend_from_slice(w_prime);
    for sym in folded.iter().rev() {
        cells.extend_from_slice(&reversed_symbol(*sym));
    }
    Ok(EncodedTape { cells, head })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodedConfiguration {
    pub w: Vec<TapeSym>,
    pub state_index: usize,
    pub head_symbol: TapeSym,
    pub w_prime: Vec<TapeSym>,
    pub nu: usize,
    pub delta_bits: String,
}

fn decode_pair_plain(c1: TapeSym, c2: TapeSym) -> Result<TapeSym, SmnError> {
    let bits = format!("{}{}", c1.to_char(), c2.to_char());
    decode_symbol(&bits)
        .ok_or_else(|| SmnError::MalformedEncoding(format!("bad symbol pair {bits}")))
}

fn decode_pair_reversed(c1: TapeSym, c2: TapeSym) -> Result<TapeSym, SmnError> {
    decode_pair_plain(c2, c1)
}

/// Inverse of [`encode_configuration`], parsing the layout structurally.
pub fn decode_configuration(tape: &EncodedTape) -> Result<DecodedConfiguration, SmnError> {
    let cells = &tape.cells;
    let head = tape.head;
    if cells.get(head) != Some(&TapeSym::Blank) {
        return Err(SmnError::MalformedEncoding(
            "head must sit on a blank".into(),
        ));
    }
    // Left: 1^(i+1) blank 1^(nu-i) blank, then symbol pairs.
    let mut pos = head;
    let mut right_run = 0usize;
    while pos > 0 && cells[pos - 1] == TapeSym::One {
        right_run += 1;
        pos -= 1;
    }
    if right_run == 0 {
        return Err(SmnError::MalformedEncoding(
            "state block must contain at least one 1".into(),
        ));
    }
    if pos == 0 || cells[pos - 1] != TapeSym::Blank {
        return Err(SmnError::MalformedEncoding(
            "missing separator inside the state block".into(),
        ));
    }
    pos -= 1;
    let mut left_run = 0usize;
    while pos > 0 && cells[pos - 1] == TapeSym::One {
        left_run += 1;
        pos -= 1;
    }
    let state_index = right_run - 1;
    let nu = left_run + state_index;
    if pos == 0 || cells[pos - 1] != TapeSym::Blank {
        return Err(SmnError::MalformedEncoding(
            "missing separator before the state block".into(),
        ));
    }
    pos -= 1;
    // Symbol pairs until the region start (or a blank).
    let wend = pos;
    let mut wstart = pos;
    while wstart > 0 && cells[wstart - 1] != TapeSym::Blank {
        wstart -= 1;
    }
    if !(wend - wstart).is_multiple_of(2) {
        return Err(SmnError::MalformedEncoding(
            "left symbol region has odd length".into(),
        ));
    }
    let mut w_rev = Vec::new();
    let mut i = wstart;
    while i < wend {
        w_rev.push(decode_pair_plain(cells[i], cells[i + 1])?);
        i += 2;
    }
    w_rev.reverse();
    let w = w_rev;

    // Right: table rows, the 111 terminator, then folded symbol pairs.
    let right = &cells[head + 1..];
    let bits: String = right
        .iter()
        .take_while(|s| s.is_bit())
        .map(|s| s.to_char())
        .collect();
    if bits.len() != right.len() {
        return Err(SmnError::MalformedEncoding(
            "right region contains a blank".into(),
        ));
    }
    let mut reader = BitReader {
        bits: bits.as_bytes(),
        pos: 0,
    };
    while !reader.at_end() && !reader.peek3_is_terminator() {
        parse_row(&mut reader)?;
    }
    let delta_bits = bits[..reader.pos].to_string();
    if reader.take(3)? != "111" {
        return Err(SmnError::MalformedEncoding("missing 111 separator".into()));
    }
    let folded_bits = &bits[reader.pos..];
    if folded_bits.len() < 2 || !folded_bits.len().is_multiple_of(2) {
        return Err(SmnError::MalformedEncoding(
            "folded region must hold at least the head symbol".into(),
        ));
    }
    let mut folded_rev = Vec::new();
    let fb = folded_bits.as_bytes();
    let mut i = 0;
    while i < fb.len() {
        folded_rev.push(decode_pair_reversed(bit_sym(fb[i]), bit_sym(fb[i + 1]))?);
        i += 2;
    }
    folded_rev.reverse();
    let head_symbol = folded_rev[0];
    let w_prime = folded_rev[1..].to_vec();
    Ok(DecodedConfiguration {
        w,
        state_index,
        head_symbol,
        w_prime,
        nu,
        delta_bits,
    })
}
