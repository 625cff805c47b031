//! Legendre pair toolkit.
//!
//! Exact and floating-point sequence kernels, unit-group orbit machinery,
//! the mod-3 PSD spectrum and orbit-compatibility filters, lexicographic
//! subset ranking, the union-of-orbits search pipeline and exact
//! verification (including Hadamard matrix construction).

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod number_theory;
pub mod oracle;
pub mod pairs_file;
pub mod pipeline;
pub mod published;
pub mod search;
pub mod seq;
pub mod verify;

pub use error::{Error, Result};
pub use seq::{BinarySequence, IntSequence};

/// Default tolerance for float-vs-exact comparisons.
pub const DEFAULT_EPS: f64 = 1e-6;

/// Tolerance taken from `LP_EPS` when set and parseable, else [`DEFAULT_EPS`].
pub fn eps_from_env() -> f64 {
    std::env::var("LP_EPS")
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(DEFAULT_EPS)
}
