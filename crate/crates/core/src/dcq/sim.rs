//! Configurations, the step function, and the run loop.
//!
//! The quantum tape is simulated through a dense window over the touched
//! qubits; everything outside the window is |0>. The window grows lazily
//! when a gate needs cells it does not cover yet. The identity gate never
//! touches the tape, so it does not grow the window; all other gates do,
//! including the diagonal ones, because the window extent determines the
//! output register.

use std::collections::HashMap;

use crate::linalg::{CMatrix, Complex64, StateVector};

use super::{DcqError, DcqMachine, Gate, TapeSym};

pub const DEFAULT_WINDOW_CAP: usize = 20;
const OUTPUT_MASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimLimits {
    pub max_steps: u64,
    pub max_window_qubits: usize,
}

impl SimLimits {
    pub fn steps(max_steps: u64) -> Self {
        SimLimits {
            max_steps,
            max_window_qubits: DEFAULT_WINDOW_CAP,
        }
    }
}

/// Dense state over the contiguous run of touched qubits. The qubit at
/// tape offset `origin + j` maps to index bit `qubits - 1 - j`, so the
/// leftmost qubit is the most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumWindow {
    origin: i64,
    qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumWindow {
    pub fn empty() -> Self {
        QuantumWindow {
            origin: 0,
            qubits: 0,
            amps: vec![Complex64::new(1.0, 0.0)],
        }
    }

    /// Window holding `state` with its first qubit at `origin`.
    pub fn from_state(origin: i64, state: &StateVector) -> Result<Self, DcqError> {
        let dim = state.dim();
        if !dim.is_power_of_two() {
            return Err(DcqError::InvalidInput(format!(
                "quantum input dimension {dim} is not a power of two"
            )));
        }
        if dim == 1 {
            return Ok(Self::empty());
        }
        Ok(QuantumWindow {
            origin,
            qubits: dim.trailing_zeros() as usize,
            amps: state.amplitudes().to_vec(),
        })
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    /// Exclusive right end of the window, in tape offsets.
    pub fn right_end(&self) -> i64 {
        self.origin + self.qubits as i64
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn to_state_vector(&self) -> StateVector {
        StateVector::new_raw(self.amps.clone()).expect("finite amplitudes")
    }

    fn grow(&mut self, lo: i64, hi: i64, cap: usize) -> Result<(), DcqError> {
        if self.qubits == 0 {
            let count = (hi - lo + 1) as usize;
            if count > cap {
                return Err(DcqError::WindowOverflow { cap });
            }
            self.origin = lo;
            self.qubits = count;
            self.amps = vec![Complex64::new(0.0, 0.0); 1 << count];
            self.amps[0] = Complex64::new(1.0, 0.0);
            return Ok(());
        }
        let grow_left = (self.origin - lo).max(0) as usize;
        let grow_right = (hi - (self.right_end() - 1)).max(0) as usize;
        let new_qubits = self.qubits + grow_left + grow_right;
        if new_qubits > cap {
            return Err(DcqError::WindowOverflow { cap });
        }
        if grow_right > 0 {
            let mut new = vec![Complex64::new(0.0, 0.0); 1 << (self.qubits + grow_right)];
            for (i, amp) in self.amps.iter().enumerate() {
                new[i << grow_right] = *amp;
            }
            self.amps = new;
            self.qubits += grow_right;
        }
        if grow_left > 0 {
            // New leftmost qubits are zero high bits: old amplitudes keep
            // their indices.
            self.qubits += grow_left;
            self.origin -= grow_left as i64;
            self.amps
                .resize(1 << self.qubits, Complex64::new(0.0, 0.0));
        }
        Ok(())
    }

    fn apply_one(&mut self, m: &CMatrix, offset: i64, cap: usize) -> Result<(), DcqError> {
        self.grow(offset, offset, cap)?;
        let j = (offset - self.origin) as usize;
        let bit = self.qubits - 1 - j;
        let stride = 1usize << bit;
        for i in 0..self.amps.len() {
            if i & stride != 0 {
                continue;
            }
            let a0 = self.amps[i];
            let a1 = self.amps[i | stride];
            self.amps[i] = m[(0, 0)] * a0 + m[(0, 1)] * a1;
            self.amps[i | stride] = m[(1, 0)] * a0 + m[(1, 1)] * a1;
        }
        Ok(())
    }

    fn apply_two(&mut self, m: &CMatrix, offset: i64, cap: usize) -> Result<(), DcqError> {
        self.grow(offset, offset + 1, cap)?;
        let j = (offset - self.origin) as usize;
        let hi = 1usize << (self.qubits - 1 - j);
        let lo = hi >> 1;
        for i in 0..self.amps.len() {
            if i & hi != 0 || i & lo != 0 {
                continue;
            }
            let idx = [i, i | lo, i | hi, i | hi | lo];
            let a: Vec<Complex64> = idx.iter().map(|&k| self.amps[k]).collect();
            for (r, &k) in idx.iter().enumerate() {
                self.amps[k] =
                    m[(r, 0)] * a[0] + m[(r, 1)] * a[1] + m[(r, 2)] * a[2] + m[(r, 3)] * a[3];
            }
        }
        Ok(())
    }

    /// Applies a 2x2 or 4x4 matrix at `offset` (and its right neighbour
    /// for 4x4), growing the window as needed.
    pub fn apply_matrix(&mut self, m: &CMatrix, offset: i64, cap: usize) -> Result<(), DcqError> {
        match m.rows() {
            2 => self.apply_one(m, offset, cap),
            4 => self.apply_two(m, offset, cap),
            d => Err(DcqError::InvalidInput(format!(
                "gate matrix must be 2x2 or 4x4, got {d}x{d}"
            ))),
        }
    }

    /// Applies a primitive gate at `offset`. The identity is a no-op and
    /// never grows the window.
    pub fn apply_gate(&mut self, gate: Gate, offset: i64, cap: usize) -> Result<(), DcqError> {
        if gate == Gate::Id {
            return Ok(());
        }
        self.apply_matrix(&gate.matrix(), offset, cap)
    }
}

/// One line of the classical execution trace. The quantum head position is
/// where the gate fired, before the head displacement.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceLine {
    pub step: u64,
    pub state: String,
    pub classical_head: i64,
    pub read: TapeSym,
    pub gate: Gate,
    pub quantum_head: i64,
}

impl TraceLine {
    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.step,
            self.state,
            self.classical_head,
            self.read.to_char(),
            self.gate.code(),
            self.quantum_head
        )
    }
}

/// Full machine configuration: sparse classical tape, both heads, the
/// quantum window, the control state, and the step counter.
#[derive(Debug, Clone)]
pub struct Configuration {
    tape: HashMap<i64, TapeSym>,
    classical_head: i64,
    window: QuantumWindow,
    quantum_head: i64,
    control: usize,
    steps: u64,
    window_cap: usize,
}

impl Configuration {
    /// Standard start: the tape word sits immediately right of the
    /// classical head, the quantum input immediately right of the quantum
    /// head, both heads at offset 0.
    pub fn init(
        machine: &DcqMachine,
        word: &[TapeSym],
        quantum_input: &StateVector,
        window_cap: usize,
    ) -> Result<Self, DcqError> {
        let mut tape = HashMap::new();
        for (i, &sym) in word.iter().enumerate() {
            if sym != TapeSym::Blank {
                tape.insert(i as i64 + 1, sym);
            }
        }
        Ok(Configuration {
            tape,
            classical_head: 0,
            window: QuantumWindow::from_state(1, quantum_input)?,
            quantum_head: 0,
            control: machine.start(),
            steps: 0,
            window_cap,
        })
    }

    /// Assembles a configuration from raw parts; used by the universal
    /// interpreter so both execution paths share one output extraction.
    pub(crate) fn from_parts(
        tape: HashMap<i64, TapeSym>,
        classical_head: i64,
        window: QuantumWindow,
        quantum_head: i64,
        control: usize,
        steps: u64,
        window_cap: usize,
    ) -> Self {
        Configuration {
            tape,
            classical_head,
            window,
            quantum_head,
            control,
            steps,
            window_cap,
        }
    }

    pub fn read(&self, offset: i64) -> TapeSym {
        self.tape.get(&offset).copied().unwrap_or(TapeSym::Blank)
    }

    pub fn write(&mut self, offset: i64, sym: TapeSym) {
        if sym == TapeSym::Blank {
            self.tape.remove(&offset);
        } else {
            self.tape.insert(offset, sym);
        }
    }

    pub fn classical_head(&self) -> i64 {
        self.classical_head
    }

    pub fn quantum_head(&self) -> i64 {
        self.quantum_head
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn window(&self) -> &QuantumWindow {
        &self.window
    }

    /// Trimmed classical configuration: symbols strictly left of the head
    /// (from the leftmost non-blank), the head symbol, and symbols right
    /// of the head (to the rightmost non-blank).
    pub fn classical_snapshot(&self) -> (Vec<TapeSym>, TapeSym, Vec<TapeSym>) {
        let head = self.classical_head;
        let lo = self.tape.keys().copied().min().unwrap_or(head);
        let hi = self.tape.keys().copied().max().unwrap_or(head);
        let mut left = Vec::new();
        if lo < head {
            let mut start = lo;
            while start < head && self.read(start) == TapeSym::Blank {
                start += 1;
            }
            for o in start..head {
                left.push(self.read(o));
            }
        }
        let mut right = Vec::new();
        if hi > head {
            let mut end = hi;
            while end > head && self.read(end) == TapeSym::Blank {
                end -= 1;
            }
            for o in (head + 1)..=end {
                right.push(self.read(o));
            }
        }
        (left, self.read(head), right)
    }

    /// Executes one transition. Returns `None` when the control already
    /// sits in the halting state.
    pub fn step(&mut self, machine: &DcqMachine) -> Result<Option<TraceLine>, DcqError> {
        if self.control == machine.halt() {
            return Ok(None);
        }
        let read = self.read(self.classical_head);
        let t = *machine
            .transition(self.control, read)
            .expect("validated machines are total on non-halting states");
        let line = TraceLine {
            step: self.steps,
            state: machine.states()[self.control].clone(),
            classical_head: self.classical_head,
            read,
            gate: t.gate,
            quantum_head: self.quantum_head,
        };
        self.window
            .apply_gate(t.gate, self.quantum_head, self.window_cap)?;
        self.quantum_head += t.quantum_move.offset();
        self.write(self.classical_head, t.write);
        self.classical_head += t.classical_move.offset();
        self.control = t.next;
        self.steps += 1;
        debug_assert!(
            (self.window.norm_sq() - 1.0).abs() < 1e-9,
            "window norm drifted"
        );
        Ok(Some(line))
    }

    /// Output extraction at the halting configuration.
    pub fn extract_output(&self) -> Result<DcqOutput, DcqError> {
        // Classical output: the bit run immediately right of the head.
        let mut classical = String::new();
        let mut pos = self.classical_head + 1;
        loop {
            let sym = self.read(pos);
            if !sym.is_bit() {
                break;
            }
            classical.push(sym.to_char());
            pos += 1;
        }
        let (quantum, quantum_qubits) = self.extract_quantum()?;
        Ok(DcqOutput {
            classical,
            quantum,
            quantum_qubits,
            steps: self.steps,
        })
    }

    /// Quantum output register: quantum-head + 1 through the rightmost
    /// window qubit. Window qubits left of the register must carry less
    /// than [`OUTPUT_MASS_TOL`] probability of being 1.
    fn extract_quantum(&self) -> Result<(StateVector, usize), DcqError> {
        let w = &self.window;
        let reg_start = self.quantum_head + 1;
        if w.qubits == 0 || w.right_end() <= reg_start {
            if w.qubits > 0 {
                let resid = 1.0 - w.amps[0].norm_sqr();
                if resid > OUTPUT_MASS_TOL {
                    return Err(DcqError::MalformedOutput(format!(
                        "window qubits left of the output register carry mass {resid:.3e}"
                    )));
                }
            }
            return Ok((StateVector::scalar_one(), 0));
        }
        let left_count = (reg_start - w.origin).max(0) as usize;
        let keep = w.qubits - left_count;
        let mut residual = 0.0;
        for amp in &w.amps[(1usize << keep)..] {
            residual += amp.norm_sqr();
        }
        if residual > OUTPUT_MASS_TOL {
            return Err(DcqError::MalformedOutput(format!(
                "window qubits left of the output register carry mass {residual:.3e}"
            )));
        }
        let gap = (w.origin - reg_start).max(0) as usize;
        let out_qubits = gap + keep;
        if out_qubits > self.window_cap {
            return Err(DcqError::WindowOverflow {
                cap: self.window_cap,
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << out_qubits];
        out[..(1 << keep)].copy_from_slice(&w.amps[..(1 << keep)]);
        Ok((StateVector::new_raw(out)?, out_qubits))
    }
}

#[derive(Debug, Clone)]
pub struct DcqOutput {
    /// Bit run immediately right of the final classical head position.
    pub classical: String,
    /// State of the output register; the trivial state when empty.
    pub quantum: StateVector,
    pub quantum_qubits: usize,
    pub steps: u64,
}

impl DcqOutput {
    /// Structural equality up to an l2 tolerance on the quantum part.
    pub fn matches(&self, other: &DcqOutput, tol: f64) -> bool {
        self.classical == other.classical
            && self.quantum_qubits == other.quantum_qubits
            && self.quantum.distance(&other.quantum) <= tol
    }
}

#[derive(Debug, Clone)]
pub enum RunOutcome {
    Halted(DcqOutput),
    /// The step budget ran out before the halting state was reached; the
    /// final configuration is returned for inspection. This is a
    /// legitimate outcome, not an error: halting is undecidable.
    BudgetExceeded(Box<Configuration>),
}

impl RunOutcome {
    pub fn halted(self) -> Option<DcqOutput> {
        match self {
            RunOutcome::Halted(o) => Some(o),
            RunOutcome::BudgetExceeded(_) => None,
        }
    }
}

pub fn run(
    machine: &DcqMachine,
    word: &[TapeSym],
    quantum_input: &StateVector,
    limits: SimLimits,
) -> Result<RunOutcome, DcqError> {
    let (outcome, _) = run_with_trace(machine, word, quantum_input, limits, false)?;
    Ok(outcome)
}

/// Like [`run`], optionally collecting the classical execution trace.
pub fn run_with_trace(
    machine: &DcqMachine,
    word: &[TapeSym],
    quantum_input: &StateVector,
    limits: SimLimits,
    keep_trace: bool,
) -> Result<(RunOutcome, Vec<TraceLine>), DcqError> {
    let mut cfg = Configuration::init(machine, word, quantum_input, limits.max_window_qubits)?;
    let mut trace = Vec::new();
    while cfg.control() != machine.halt() {
        if cfg.steps() >= limits.max_steps {
            return Ok((RunOutcome::BudgetExceeded(Box::new(cfg)), trace));
        }
        let line = cfg.step(machine)?.expect("not halted");
        if keep_trace {
            trace.push(line);
        }
    }
    let output = cfg.extract_output()?;
    Ok((RunOutcome::Halted(output), trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct Decision {
    /// Probability of measuring 1 on the first output qubit.
    pub p_one: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub enum DecideOutcome {
    Decided(Decision),
    BudgetExceeded,
}

/// Runs on `(bits, |epsilon>)` and measures the first output qubit.
pub fn decide(
    machine: &DcqMachine,
    input: &[TapeSym],
    limits: SimLimits,
) -> Result<DecideOutcome, DcqError> {
    let outcome = run(machine, input, &StateVector::scalar_one(), limits)?;
    let output = match outcome {
        RunOutcome::Halted(o) => o,
        RunOutcome::BudgetExceeded(_) => return Ok(DecideOutcome::BudgetExceeded),
    };
    if output.quantum_qubits == 0 {
        return Err(DcqError::NoQuantumOutput);
    }
    let half = output.quantum.dim() / 2;
    let p_one: f64 = output.quantum.amplitudes()[half..]
        .iter()
        .map(|z| z.norm_sqr())
        .sum();
    let verdict = if p_one > 2.0 / 3.0 {
        Verdict::Accept
    } else if 1.0 - p_one > 2.0 / 3.0 {
        Verdict::Reject
    } else {
        Verdict::Inconclusive
    };
    Ok(DecideOutcome::Decided(Decision { p_one, verdict }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcq::{bits, Move};

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

    /// Machine whose single step applies `gate` then parks the quantum
    /// head left of the gated qubit.
    fn one_gate_machine(gate: Gate) -> DcqMachine {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, gate, Move::Left, a, Move::Stay, "qh"));
        }
        DcqMachine::new(vec!["qs".into(), "qh".into()], "qs", "qh", rows).unwrap()
    }

    /// Reads over the input, rewriting every bit, then walks back and
    /// halts at the starting cell: output equals input.
    pub(crate) fn copy_machine() -> DcqMachine {
        let mut rows = Vec::new();
        rows.push(row("qs", '_', Gate::Id, Move::Stay, '_', Move::Right, "scan"));
        rows.push(row("qs", '0', Gate::Id, Move::Stay, '0', Move::Stay, "qh"));
        rows.push(row("qs", '1', Gate::Id, Move::Stay, '1', Move::Stay, "qh"));
        rows.push(row("scan", '0', Gate::Id, Move::Stay, '0', Move::Right, "scan"));
        rows.push(row("scan", '1', Gate::Id, Move::Stay, '1', Move::Right, "scan"));
        rows.push(row("scan", '_', Gate::Id, Move::Stay, '_', Move::Left, "back"));
        rows.push(row("back", '0', Gate::Id, Move::Stay, '0', Move::Left, "back"));
        rows.push(row("back", '1', Gate::Id, Move::Stay, '1', Move::Left, "back"));
        rows.push(row("back", '_', Gate::Id, Move::Stay, '_', Move::Stay, "park"));
        rows.push(row("park", '_', Gate::Id, Move::Stay, '_', Move::Stay, "qh"));
        rows.push(row("park", '0', Gate::Id, Move::Stay, '0', Move::Stay, "qh"));
        rows.push(row("park", '1', Gate::Id, Move::Stay, '1', Move::Stay, "qh"));
        DcqMachine::new(
            vec![
                "qs".into(),
                "scan".into(),
                "back".into(),
                "park".into(),
                "qh".into(),
            ],
            "qs",
            "qh",
        rows,
        )
        .unwrap()
    }

    #[test]
    fn init_layout_matches_convention() {
        let m = copy_machine();
        let cfg =
            Configuration::init(&m, &bits("01").unwrap(), &StateVector::scalar_one(), 20).unwrap();
        assert_eq!(cfg.classical_head(), 0);
        assert_eq!(cfg.quantum_head(), 0);
        assert_eq!(cfg.read(0), TapeSym::Blank);
        assert_eq!(cfg.read(1), TapeSym::Zero);
        assert_eq!(cfg.read(2), TapeSym::One);
        assert_eq!(cfg.window().qubit_count(), 0);
    }

    #[test]
    fn entangled_input_is_preserved_in_the_window() {
        let m = copy_machine();
        let h = 1.0 / 2.0_f64.sqrt();
        let bell = StateVector::new(vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
        ])
        .unwrap();
        let cfg = Configuration::init(&m, &[], &bell, 20).unwrap();
        assert_eq!(cfg.window().qubit_count(), 2);
        assert_eq!(cfg.window().origin(), 1);
        assert!((cfg.window().amplitudes()[0].re - h).abs() < 1e-12);
        assert!((cfg.window().amplitudes()[3].re - h).abs() < 1e-12);
    }

    #[test]
    fn hadamard_step_grows_window_to_one_qubit() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::H, Move::Stay, a, Move::Stay, "qh"));
        }
        let m = DcqMachine::new(vec!["qs".into(), "qh".into()], "qs", "qh", rows).unwrap();
        let mut cfg = Configuration::init(&m, &[], &StateVector::scalar_one(), 20).unwrap();
        cfg.step(&m).unwrap();
        assert_eq!(cfg.window().qubit_count(), 1);
        let h = 1.0 / 2.0_f64.sqrt();
        assert!((cfg.window().amplitudes()[0].re - h).abs() < 1e-12);
        assert!((cfg.window().amplitudes()[1].re - h).abs() < 1e-12);
        assert_eq!(cfg.steps(), 1);
        assert!(cfg.step(&m).unwrap().is_none(), "halted");
    }

    #[test]
    fn write_step_updates_tape_and_head() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::Id, Move::Stay, '1', Move::Right, "qh"));
        }
        let m = DcqMachine::new(vec!["qs".into(), "qh".into()], "qs", "qh", rows).unwrap();
        let mut cfg = Configuration::init(&m, &[], &StateVector::scalar_one(), 20).unwrap();
        cfg.step(&m).unwrap();
        assert_eq!(cfg.read(0), TapeSym::One);
        assert_eq!(cfg.classical_head(), 1);
        // identity gate left the window untouched
        assert_eq!(cfg.window().qubit_count(), 0);
    }

    #[test]
    fn cnot_flips_target_when_control_is_one() {
        // Move the quantum head onto the input qubit, then fire CNOT.
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::Id, Move::Right, a, Move::Stay, "go"));
            rows.push(row("go", a, Gate::Cnot, Move::Stay, a, Move::Stay, "qh"));
        }
        let m = DcqMachine::new(vec!["qs".into(), "go".into(), "qh".into()], "qs", "qh", rows)
            .unwrap();
        let one = StateVector::basis(2, 1);
        let mut cfg = Configuration::init(&m, &[], &one, 20).unwrap();
        cfg.step(&m).unwrap();
        cfg.step(&m).unwrap();
        // window now holds |11> over offsets 1..=2
        assert_eq!(cfg.window().qubit_count(), 2);
        let amps = cfg.window().amplitudes();
        assert!((amps[3].re - 1.0).abs() < 1e-12);
        assert!(amps[0].norm() < 1e-12);
    }

    #[test]
    fn one_step_hadamard_run_produces_uniform_qubit() {
        let m = one_gate_machine(Gate::H);
        let out = run(&m, &[], &StateVector::scalar_one(), SimLimits::steps(10))
            .unwrap()
            .halted()
            .unwrap();
        assert_eq!(out.classical, "");
        assert_eq!(out.steps, 1);
        assert_eq!(out.quantum_qubits, 1);
        let h = 1.0 / 2.0_f64.sqrt();
        assert!((out.quantum.amplitudes()[0].re - h).abs() < 1e-12);
        assert!((out.quantum.amplitudes()[1].re - h).abs() < 1e-12);
    }

    #[test]
    fn copy_machine_reproduces_all_three_bit_inputs() {
        let m = copy_machine();
        for w in 0..8u32 {
            let input: String = (0..3).map(|i| if w >> i & 1 == 1 { '1' } else { '0' }).collect();
            let out = run(
                &m,
                &bits(&input).unwrap(),
                &StateVector::scalar_one(),
                SimLimits::steps(100),
            )
            .unwrap()
            .halted()
            .unwrap();
            assert_eq!(out.classical, input);
        }
    }

    #[test]
    fn looping_machine_exceeds_any_budget() {
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("a", a, Gate::Id, Move::Stay, a, Move::Stay, "b"));
            rows.push(row("b", a, Gate::Id, Move::Stay, a, Move::Stay, "a"));
        }
        let m = DcqMachine::new(vec!["a".into(), "b".into(), "qh".into()], "a", "qh", rows)
            .unwrap();
        for budget in [0u64, 1, 10, 1000] {
            let out = run(
                &m,
                &[],
                &StateVector::scalar_one(),
                SimLimits::steps(budget),
            )
            .unwrap();
            assert!(matches!(out, RunOutcome::BudgetExceeded(_)));
        }
    }

    #[test]
    fn decide_accepts_after_synthesized_bit_flip() {
        // H S S H = X, so the sequence places |1> deterministically.
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("qs", a, Gate::H, Move::Stay, a, Move::Stay, "s1"));
            rows.push(row("s1", a, Gate::S, Move::Stay, a, Move::Stay, "s2"));
            rows.push(row("s2", a, Gate::S, Move::Stay, a, Move::Stay, "h2"));
            rows.push(row("h2", a, Gate::H, Move::Left, a, Move::Stay, "qh"));
        }
        let m = DcqMachine::new(
            vec!["qs".into(), "s1".into(), "s2".into(), "h2".into(), "qh".into()],
            "qs",
            "qh",
            rows,
        )
        .unwrap();
        let DecideOutcome::Decided(d) = decide(&m, &[], SimLimits::steps(10)).unwrap() else {
            panic!("must halt");
        };
        assert!((d.p_one - 1.0).abs() < 1e-9);
        assert_eq!(d.verdict, Verdict::Accept);
    }

    #[test]
    fn decide_is_inconclusive_on_a_hadamard_qubit() {
        let m = one_gate_machine(Gate::H);
        let DecideOutcome::Decided(d) = decide(&m, &[], SimLimits::steps(10)).unwrap() else {
            panic!("must halt");
        };
        assert!((d.p_one - 0.5).abs() < 1e-12);
        assert_eq!(d.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn decide_rejects_on_a_diagonal_gate() {
        let m = one_gate_machine(Gate::T);
        let DecideOutcome::Decided(d) = decide(&m, &[], SimLimits::steps(10)).unwrap() else {
            panic!("must halt");
        };
        assert!(d.p_one.abs() < 1e-12);
        assert_eq!(d.verdict, Verdict::Reject);
    }

    #[test]
    fn classical_trace_is_independent_of_the_quantum_input() {
        let m = copy_machine();
        let h = 1.0 / 2.0_f64.sqrt();
        let plus = StateVector::new(vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)]).unwrap();
        let minus =
            StateVector::new(vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)]).unwrap();
        let (_, t1) =
            run_with_trace(&m, &bits("101").unwrap(), &plus, SimLimits::steps(100), true).unwrap();
        let (_, t2) =
            run_with_trace(&m, &bits("101").unwrap(), &minus, SimLimits::steps(100), true)
                .unwrap();
        assert_eq!(t1, t2);
        assert!(!t1.is_empty());
    }

    #[test]
    fn gate_application_is_local() {
        // Amplitude blocks over untouched qubits evolve independently:
        // applying the gate to each sub-block reproduces the full result.
        let mut rng = crate::random::rng(88);
        for gate in [Gate::H, Gate::S, Gate::T, Gate::Swap, Gate::Cnot] {
            let state = crate::random::random_state(16, &mut rng);
            let mut w = QuantumWindow::from_state(0, &state).unwrap();
            w.apply_gate(gate, 1, 20).unwrap();
            // offsets: 0..3; gate at 1 (and 2 for two-qubit gates)
            let m = gate.matrix();
            let full = w.amplitudes();
            let orig = state.amplitudes();
            if gate.arity() == 1 {
                for outer in 0..16usize {
                    if outer & 0b0100 != 0 {
                        continue;
                    }
                    let a0 = orig[outer];
                    let a1 = orig[outer | 0b0100];
                    let e0 = m[(0, 0)] * a0 + m[(0, 1)] * a1;
                    let e1 = m[(1, 0)] * a0 + m[(1, 1)] * a1;
                    assert!((full[outer] - e0).norm() < 1e-12);
                    assert!((full[outer | 0b0100] - e1).norm() < 1e-12);
                }
            } else {
                for outer in 0..16usize {
                    if outer & 0b0110 != 0 {
                        continue;
                    }
                    let idx = [outer, outer | 0b0010, outer | 0b0100, outer | 0b0110];
                    for r in 0..4 {
                        let mut e = Complex64::new(0.0, 0.0);
                        for c in 0..4 {
                            e += m[(r, c)] * orig[idx[c]];
                        }
                        assert!((full[idx[r]] - e).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn window_overflow_is_reported() {
        // March the quantum head right applying Hadamards until the cap.
        let mut rows = Vec::new();
        for a in ['0', '1', '_'] {
            rows.push(row("go", a, Gate::H, Move::Right, a, Move::Stay, "go"));
        }
        let m = DcqMachine::new(vec!["go".into(), "qh".into()], "go", "qh", rows).unwrap();
        let r = run(
            &m,
            &[],
            &StateVector::scalar_one(),
            SimLimits {
                max_steps: 100,
                max_window_qubits: 6,
            },
        );
        assert!(matches!(r, Err(DcqError::WindowOverflow { cap: 6 })));
    }

    #[test]
    fn reverse_gate_sequence_restores_the_initial_window() {
        // A fixed cycle of gates with balanced head moves.
        let plan = [
            (Gate::H, Move::Right),
            (Gate::T, Move::Right),
            (Gate::Cnot, Move::Left),
            (Gate::S, Move::Right),
            (Gate::Swap, Move::Left),
            (Gate::H, Move::Left),
        ];
        let mut rows = Vec::new();
        let mut states: Vec<String> = (0..plan.len()).map(|i| format!("g{i}")).collect();
        states.push("qh".into());
        for (i, (g, mv)) in plan.iter().enumerate() {
            let next = if i + 1 == plan.len() {
                "qh".to_string()
            } else {
                format!("g{}", i + 1)
            };
            for a in ['0', '1', '_'] {
                rows.push(row(&format!("g{i}"), a, *g, *mv, a, Move::Stay, &next));
            }
        }
        let m = DcqMachine::new(states, "g0", "qh", rows).unwrap();
        let mut cfg = Configuration::init(&m, &[], &StateVector::scalar_one(), 20).unwrap();
        let mut applied = Vec::new();
        while let Some(line) = cfg.step(&m).unwrap() {
            applied.push((line.gate, line.quantum_head));
        }
        let mut w = cfg.window().clone();
        for (g, at) in applied.iter().rev() {
            if *g == Gate::Id {
                continue;
            }
            w.apply_matrix(&g.matrix().adjoint(), *at, 20).unwrap();
        }
        // All qubits must be back to |0>.
        assert!((w.amplitudes()[0].norm() - 1.0).abs() < 1e-8);
        for amp in &w.amplitudes()[1..] {
            assert!(amp.norm() < 1e-8);
        }
    }
}
