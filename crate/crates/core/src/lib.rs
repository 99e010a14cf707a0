//! Hat guessing games on graphs with exact arithmetic.
//!
//! The crate decides, for chordal graphs, which guess ratios admit a winning
//! strategy, builds such strategies explicitly, checks them against every hat
//! arrangement, and computes the fractional hat chromatic number.

pub mod cli;
pub mod graph;
pub mod mu;
pub mod numerics;
pub mod polynomial;
pub mod strategy;
pub mod synthesis;
pub mod verifier;
