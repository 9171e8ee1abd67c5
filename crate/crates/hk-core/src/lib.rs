//! Exact-arithmetic library for Hilbert-Kunz-theoretic invariants:
//! kernel functions of addition in fixed and limit characteristic, a
//! finite-field brute-force oracle, h-function composition by Stieltjes
//! integration, and the generating functions of Fermat towers.

pub mod error;
pub mod exact;

pub use error::{Error, Result};
