//! Library side of the `qwalk` command: value parsers and the reproduction
//! matrix.

pub mod parse;
pub mod reproduce;

pub use reproduce::{reproduce, ClaimResult, Comparison, ReproductionMatrix};
