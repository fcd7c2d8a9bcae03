//! Program encodings and the universal emulation layer for the
//! deterministic-control machine: a linear-size translation map
//! `p -> table 111 p`, exact configuration encode/decode, and a
//! micro-step interpreter whose outputs coincide with direct execution
//! while its step count stays within a quadratic envelope.

mod encode;
mod universal;

pub use encode::{
    decode_configuration, decode_gate, decode_move, decode_symbol, decode_transition_table,
    encode_configuration, encode_gate, encode_move, encode_state, encode_symbol,
    DecodedConfiguration, EncodedMachine, EncodedTape,
};
pub use universal::{
    emulate, universality_program, universality_wrapper, UniversalOutcome, UniversalRun,
};

use thiserror::Error;

use crate::dcq::DcqError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SmnError {
    #[error("invalid program: {0}")]
    InvalidProgram(String),
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error(transparent)]
    Dcq(#[from] DcqError),
}
