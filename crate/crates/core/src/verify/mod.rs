//! Pair verification, symmetry classes and derived objects.

mod compression;
mod hadamard;
mod pair;
mod symmetry;

pub use compression::{compression_certificate, CompressionCertificate, CompressionOutcome};
pub use hadamard::{hadamard_from_pair, hadamard_from_sequences, CornerVariant, HadamardMatrix};
pub use pair::{verify_pair, LegendrePairResult, PairFailure};
pub use symmetry::{canonical_sequence, pair_class_id, symmetry_reduce, PairClass, SymmetryReport};
