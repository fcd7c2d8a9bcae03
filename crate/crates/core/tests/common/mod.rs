//! Shared helpers for the integration suites: word enumeration and the
//! machine corpus used by the emulation criteria.

use qcm_core::dcq::{bits, program_input_word, run, DcqMachine, Gate, Move, SimLimits, TapeSym};
use qcm_core::linalg::{Complex64, StateVector};
use rand::Rng;

/// All binary words of length 0..=max, as strings over {0,1}.
pub fn binary_words(max: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 0..=max {
        for w in 0..(1u64 << len) {
            out.push(
                (0..len)
                    .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
                    .collect(),
            );
        }
    }
    out
}

pub fn row(
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

/// Total machine from a per-(state, symbol) closure.
pub fn machine_from(
    states: &[&str],
    halt: &str,
    mut f: impl FnMut(&str, char) -> (Gate, Move, char, Move, String),
) -> DcqMachine {
    let mut rows = Vec::new();
    for q in states {
        if *q == halt {
            continue;
        }
        for a in ['0', '1', '_'] {
            let (g, d, a2, d2, q2) = f(q, a);
            rows.push(row(q, a, g, d, a2, d2, &q2));
        }
    }
    DcqMachine::new(
        states.iter().map(|s| s.to_string()).collect(),
        states[0],
        halt,
        rows,
    )
    .unwrap()
}

/// Quantum inputs used across the emulation criteria: up to two qubits.
pub fn quantum_inputs() -> Vec<StateVector> {
    let h = 1.0 / 2.0_f64.sqrt();
    vec![
        StateVector::scalar_one(),
        StateVector::basis(2, 1),
        StateVector::new(vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]).unwrap(),
        StateVector::new(vec![
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
        ])
        .unwrap(),
    ]
}

/// Program/input pairs with |p| + |x| <= 6.
pub fn program_inputs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("", ""),
        ("1", "0"),
        ("01", ""),
        ("", "101"),
        ("11", "01"),
        ("0", "1011"),
    ]
}

/// Hand-built machines covering every gate, both head directions, blanks
/// written mid-word, and growth of both word regions.
pub fn hand_built_machines() -> Vec<DcqMachine> {
    let mut out = Vec::new();

    // one gate then park the head left of the gated qubit
    for gate in [Gate::H, Gate::S, Gate::T] {
        out.push(machine_from(&["qs", "qh"], "qh", |_, a| {
            (gate, Move::Left, a, Move::Stay, "qh".into())
        }));
    }

    // writes 1, steps right, halts
    out.push(machine_from(&["qs", "mid", "qh"], "qh", |q, a| match q {
        "qs" => (Gate::Id, Move::Stay, '1', Move::Right, "mid".into()),
        _ => (Gate::Id, Move::Stay, a, Move::Stay, "qh".into()),
    }));

    // copy: scan right over the input, walk back, halt at the start
    out.push(machine_from(
        &["qs", "scan", "back", "park", "qh"],
        "qh",
        |q, a| match (q, a) {
            ("qs", '_') => (Gate::Id, Move::Stay, '_', Move::Right, "scan".into()),
            ("qs", b) => (Gate::Id, Move::Stay, b, Move::Stay, "qh".into()),
            ("scan", '_') => (Gate::Id, Move::Stay, '_', Move::Left, "back".into()),
            ("scan", b) => (Gate::Id, Move::Stay, b, Move::Right, "scan".into()),
            ("back", '_') => (Gate::Id, Move::Stay, '_', Move::Stay, "park".into()),
            ("back", b) => (Gate::Id, Move::Stay, b, Move::Left, "back".into()),
            ("park", b) => (Gate::Id, Move::Stay, b, Move::Stay, "qh".into()),
            _ => unreachable!(),
        },
    ));

    // inverter: flip every bit of the input, walk back
    out.push(machine_from(
        &["qs", "inv", "back", "qh"],
        "qh",
        |q, a| match (q, a) {
            ("qs", _) => (Gate::Id, Move::Stay, a, Move::Right, "inv".into()),
            ("inv", '0') => (Gate::Id, Move::Stay, '1', Move::Right, "inv".into()),
            ("inv", '1') => (Gate::Id, Move::Stay, '0', Move::Right, "inv".into()),
            ("inv", '_') => (Gate::Id, Move::Stay, '_', Move::Left, "back".into()),
            ("back", '_') => (Gate::Id, Move::Stay, '_', Move::Stay, "qh".into()),
            ("back", b) => (Gate::Id, Move::Stay, b, Move::Left, "back".into()),
            _ => unreachable!(),
        },
    ));

    // synthesized bit flip on the quantum tape: H S S H = X, then park
    out.push(machine_from(
        &["qs", "s1", "s2", "h2", "qh"],
        "qh",
        |q, a| match q {
            "qs" => (Gate::H, Move::Stay, a, Move::Stay, "s1".into()),
            "s1" => (Gate::S, Move::Stay, a, Move::Stay, "s2".into()),
            "s2" => (Gate::S, Move::Stay, a, Move::Stay, "h2".into()),
            _ => (Gate::H, Move::Left, a, Move::Stay, "qh".into()),
        },
    ));

    // Bell pair: H then CNOT over (head, head + 1), park left
    out.push(machine_from(&["qs", "c1", "qh"], "qh", |q, a| match q {
        "qs" => (Gate::H, Move::Stay, a, Move::Stay, "c1".into()),
        _ => (Gate::Cnot, Move::Left, a, Move::Stay, "qh".into()),
    }));

    // swap the input qubit one cell to the right
    out.push(machine_from(&["qs", "s1", "qh"], "qh", |q, a| match q {
        "qs" => (Gate::Id, Move::Right, a, Move::Stay, "s1".into()),
        _ => (Gate::Swap, Move::Left, a, Move::Stay, "qh".into()),
    }));

    // erase the first input symbol (writes a blank mid-word)
    out.push(machine_from(&["qs", "z1", "qh"], "qh", |q, a| match q {
        "qs" => (Gate::Id, Move::Stay, a, Move::Right, "z1".into()),
        _ => (Gate::Id, Move::Stay, '_', Move::Right, "qh".into()),
    }));

    // walk left writing two marks (grows the tape on the left)
    out.push(machine_from(
        &["qs", "l1", "l2", "qh"],
        "qh",
        |q, _| match q {
            "qs" => (Gate::Id, Move::Stay, '1', Move::Left, "l1".into()),
            "l1" => (Gate::Id, Move::Stay, '1', Move::Left, "l2".into()),
            _ => (Gate::Id, Move::Stay, '_', Move::Stay, "qh".into()),
        },
    ));

    // zigzag: right, right, left, halt, leaving 0 1 on the tape
    out.push(machine_from(
        &["qs", "r1", "r2", "qh"],
        "qh",
        |q, a| match q {
            "qs" => (Gate::Id, Move::Stay, '0', Move::Right, "r1".into()),
            "r1" => (Gate::Id, Move::Stay, '1', Move::Right, "r2".into()),
            _ => (Gate::Id, Move::Stay, a, Move::Left, "qh".into()),
        },
    ));

    // gate ladder: H at 0, S at 1, T back at 0, ending left of both
    out.push(machine_from(
        &["qs", "g1", "g2", "qh"],
        "qh",
        |q, a| match q {
            "qs" => (Gate::H, Move::Right, a, Move::Stay, "g1".into()),
            "g1" => (Gate::S, Move::Left, a, Move::Stay, "g2".into()),
            _ => (Gate::T, Move::Left, a, Move::Stay, "qh".into()),
        },
    ));

    out
}

/// Seeded pseudo-random machines filtered so that every corpus input halts
/// quickly with a clean output on the direct path.
pub fn random_halting_machines(count: usize, seed: u64) -> Vec<DcqMachine> {
    let mut rng = qcm_core::random::rng(seed);
    let gates = [Gate::Id, Gate::Id, Gate::H, Gate::S, Gate::T];
    let moves = [Move::Left, Move::Stay, Move::Right];
    let syms = ['0', '1', '_'];
    let mut out = Vec::new();
    let inputs = program_inputs();
    let psis = quantum_inputs();
    'search: while out.len() < count {
        let n_states = rng.gen_range(3..=5usize);
        let names: Vec<String> = (0..n_states - 1)
            .map(|i| format!("q{i}"))
            .chain(std::iter::once("qh".to_string()))
            .collect();
        let mut rows = Vec::new();
        for q in 0..n_states - 1 {
            for a in syms {
                let gate = gates[rng.gen_range(0..gates.len())];
                let qmove = moves[rng.gen_range(0..moves.len())];
                let write = syms[rng.gen_range(0..3)];
                let cmove = moves[rng.gen_range(0..moves.len())];
                // strong bias toward progress so most samples halt
                let next = if rng.gen_bool(0.45) {
                    n_states - 1
                } else {
                    rng.gen_range(0..n_states - 1)
                };
                rows.push(row(
                    &names[q],
                    a,
                    gate,
                    qmove,
                    write,
                    cmove,
                    &names[next],
                ));
            }
        }
        let m = DcqMachine::new(names.clone(), &names[0], "qh", rows).unwrap();
        let limits = SimLimits {
            max_steps: 150,
            max_window_qubits: 10,
        };
        for (p, x) in &inputs {
            for psi in &psis {
                let word = program_input_word(&bits(p).unwrap(), &bits(x).unwrap());
                match run(&m, &word, psi, limits) {
                    Ok(qcm_core::dcq::RunOutcome::Halted(_)) => {}
                    _ => continue 'search,
                }
            }
        }
        out.push(m);
    }
    out
}

/// The emulation corpus: hand-built plus filtered random machines.
pub fn corpus() -> Vec<DcqMachine> {
    let mut machines = hand_built_machines();
    let extra = random_halting_machines(10, 271828);
    machines.extend(extra);
    assert!(machines.len() >= 20, "corpus must hold at least 20 machines");
    machines
}
