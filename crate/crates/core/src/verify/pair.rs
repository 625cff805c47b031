use std::fmt;

use serde::Serialize;

use super::symmetry::pair_class_id;
use crate::error::Error;
use crate::seq::{paf_unchecked, psd_exact_third, BinarySequence, RootTable};

/// A pair that satisfies `PAF(A,s) + PAF(B,s) = -2` for `1 <= s <= (l-1)/2`.
#[derive(Clone, Debug, Serialize)]
pub struct LegendrePairResult {
    #[serde(serialize_with = "as_string")]
    pub a: BinarySequence,
    #[serde(serialize_with = "as_string")]
    pub b: BinarySequence,
    pub paf_sums: Vec<i64>,
    /// `[PSD(A, l/3), PSD(B, l/3)]` in exact integers when `3 | l`.
    pub psd_third: Option<[i64; 2]>,
    pub class_id: String,
}

fn as_string<S: serde::Serializer>(s: &BinarySequence, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(s)
}

impl LegendrePairResult {
    pub fn l(&self) -> usize {
        self.a.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PairFailure {
    LengthMismatch { a: usize, b: usize },
    EvenLength(usize),
    NotNormalized { which: char, sum: i64 },
    Paf { lag: usize, sum: i64 },
    Psd { lag: usize, sum: f64 },
}

impl fmt::Display for PairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairFailure::LengthMismatch { a, b } => write!(f, "lengths differ ({a} vs {b})"),
            PairFailure::EvenLength(l) => write!(f, "length {l} is even"),
            PairFailure::NotNormalized { which, sum } => {
                write!(f, "sequence {which} sums to {sum}, expected 1")
            }
            PairFailure::Paf { lag, sum } => {
                write!(f, "PAF(A,{lag}) + PAF(B,{lag}) = {sum}, expected -2")
            }
            PairFailure::Psd { lag, sum } => {
                write!(f, "PSD(A,{lag}) + PSD(B,{lag}) = {sum}, expected 2l+2")
            }
        }
    }
}

impl From<PairFailure> for Error {
    fn from(f: PairFailure) -> Self {
        Error::Verification(f.to_string())
    }
}

/// Exact PAF check of a candidate pair; on success also checks the PSD sum
/// `2l+2` at every lag in `1..=(l-1)/2` within `eps`.
pub fn verify_pair(
    a: &BinarySequence,
    b: &BinarySequence,
    eps: f64,
) -> Result<LegendrePairResult, PairFailure> {
    let l = a.len();
    if b.len() != l {
        return Err(PairFailure::LengthMismatch { a: l, b: b.len() });
    }
    if l % 2 == 0 {
        return Err(PairFailure::EvenLength(l));
    }
    for (which, s) in [('A', a), ('B', b)] {
        if !s.is_normalized() {
            return Err(PairFailure::NotNormalized {
                which,
                sum: s.sum(),
            });
        }
    }
    let half = (l - 1) / 2;
    let mut paf_sums = Vec::with_capacity(half);
    for lag in 1..=half {
        let sum = paf_unchecked(a.entries(), lag) + paf_unchecked(b.entries(), lag);
        if sum != -2 {
            return Err(PairFailure::Paf { lag, sum });
        }
        paf_sums.push(sum);
    }
    let table = RootTable::new(l);
    let target = 2.0 * l as f64 + 2.0;
    for lag in 1..=half {
        let sum = table.dft_unchecked(a.entries(), lag).norm_sqr()
            + table.dft_unchecked(b.entries(), lag).norm_sqr();
        if (sum - target).abs() > eps {
            return Err(PairFailure::Psd { lag, sum });
        }
    }
    let psd_third = (l % 3 == 0).then(|| {
        [
            psd_exact_third(a.entries()).expect("3 | l"),
            psd_exact_third(b.entries()).expect("3 | l"),
        ]
    });
    Ok(LegendrePairResult {
        class_id: pair_class_id(a, b),
        a: a.clone(),
        b: b.clone(),
        paf_sums,
        psd_third,
    })
}
