//! Simulation and analysis of quantum machines driven by classical control:
//! the one-way quantum finite automaton family (measure-once, measure-many,
//! multi-letter, control-language, and hybrid classical-quantum machines),
//! state-complexity auditing for the hybrid model, and a two-tape Turing
//! machine with deterministic classical control, a binary program encoding,
//! and a step-counted universal emulator.

pub mod complexity;
pub mod constructions;
pub mod dcq;
pub mod dfa;
pub mod experiment;
pub mod linalg;
pub mod qfa;
pub mod random;
pub mod smn;
