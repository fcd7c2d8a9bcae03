pub mod audit;
pub mod build;
pub mod compose;
pub mod dcq;
pub mod dfa;
pub mod experiment;
pub mod qfa;
