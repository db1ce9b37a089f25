//! Bipartite entanglement detection from moments of the realigned density
//! matrix.
//!
//! The pipeline is `states` (construct and validate ρ) → `maps` (realign or
//! partially transpose) → `moments` (power traces and derived quantities) →
//! `criteria` (scalar detectors) → `sweep` (parameter scans, boundaries and
//! random surveys).

pub mod criteria;
mod error;
pub mod linalg;
pub mod maps;
pub mod moments;
pub mod numfmt;
pub mod states;
pub mod sweep;
pub mod tolerance;

pub use error::{Error, Result};
