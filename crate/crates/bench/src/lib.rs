//! Shared fixtures for the criterion benchmarks.

use qcm_core::dcq::{DcqMachine, Gate, Move, TapeSym};
use qcm_core::qfa::Qfac;

/// Random hybrid machine of a fixed mid size.
pub fn bench_qfac(seed: u64) -> Qfac {
    let mut rng = qcm_core::random::rng(seed);
    qcm_core::random::random_qfac(4, 3, &["0", "1"], 2, &mut rng)
}

/// Alternating binary word.
pub fn bench_word(len: usize) -> Vec<usize> {
    (0..len).map(|i| i % 2).collect()
}

/// Machine that rewrites its input and walks back, for stepping and emulation
/// throughput.
pub fn copy_machine() -> DcqMachine {
    let row = |q: &str, a: char, g: Gate, d: Move, a2: char, d2: Move, q2: &str| {
        (
            q.to_string(),
            TapeSym::from_char(a).unwrap(),
            g,
            d,
            TapeSym::from_char(a2).unwrap(),
            d2,
            q2.to_string(),
        )
    };
    let mut rows = vec![
        row("qs", '_', Gate::Id, Move::Stay, '_', Move::Right, "scan"),
        row("qs", '0', Gate::Id, Move::Stay, '0', Move::Stay, "qh"),
        row("qs", '1', Gate::Id, Move::Stay, '1', Move::Stay, "qh"),
        row("scan", '_', Gate::Id, Move::Stay, '_', Move::Left, "back"),
        row("back", '_', Gate::Id, Move::Stay, '_', Move::Stay, "qh"),
    ];
    for b in ['0', '1'] {
        rows.push(row("scan", b, Gate::Id, Move::Stay, b, Move::Right, "scan"));
        rows.push(row("back", b, Gate::Id, Move::Stay, b, Move::Left, "back"));
    }
    DcqMachine::new(
        vec!["qs".into(), "scan".into(), "back".into(), "qh".into()],
        "qs",
        "qh",
        rows,
    )
    .unwrap()
}
