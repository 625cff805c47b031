//! Integer PSD certificates from constant-PAF compressions.
//!
//! If the `m`-compressions of a pair have constant PAF at lags
//! `1..=(n-1)/2` (`n = l/m`), then `PSD(A, m*s) = p2(comp A) - PAF(comp A, 1)`
//! for `s = 1..=(n-1)/2`, and likewise for `B`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::{compress, paf_unchecked, power_sums, BinarySequence, IntSequence, RootTable};

#[derive(Clone, Debug, Serialize)]
pub struct CompressionCertificate {
    pub m: usize,
    pub compressed_a: Vec<i64>,
    pub compressed_b: Vec<i64>,
    /// Constant PAF values of the two compressions.
    pub paf_constants: [i64; 2],
    /// Predicted `[PSD(A, m s), PSD(B, m s)]`.
    pub predicted: [i64; 2],
    /// Lags `m s` at which the prediction was checked.
    pub lags: Vec<usize>,
    /// Largest deviation of the floating PSD from the prediction.
    pub max_error: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CompressionOutcome {
    Certified(CompressionCertificate),
    PremiseNotMet {
        compressed_a: Vec<i64>,
        compressed_b: Vec<i64>,
        reason: String,
    },
}

fn constant_paf(c: &IntSequence) -> Option<i64> {
    let n = c.len();
    let first = paf_unchecked(&c.entries, 1);
    (2..=(n - 1) / 2)
        .all(|s| paf_unchecked(&c.entries, s) == first)
        .then_some(first)
}

pub fn compression_certificate(
    a: &BinarySequence,
    b: &BinarySequence,
    m: usize,
    eps: f64,
) -> Result<CompressionOutcome> {
    let l = a.len();
    if b.len() != l {
        return Err(Error::Invalid("sequences differ in length".into()));
    }
    if m == 0 || l % m != 0 {
        return Err(Error::NotDivisible { divisor: m, len: l });
    }
    let n = l / m;
    if n % 2 == 0 {
        return Err(Error::Invalid(format!("compressed length {n} is even")));
    }
    let ca = compress(a.entries(), m)?;
    let cb = compress(b.entries(), m)?;
    let not_met = |reason: String| {
        Ok(CompressionOutcome::PremiseNotMet {
            compressed_a: ca.entries.clone(),
            compressed_b: cb.entries.clone(),
            reason,
        })
    };
    if n < 3 {
        return not_met(format!("compressed length {n} has no nonzero lags"));
    }
    let Some(pa) = constant_paf(&ca) else {
        return not_met("compression of A is not constant-PAF".into());
    };
    let Some(pb) = constant_paf(&cb) else {
        return not_met("compression of B is not constant-PAF".into());
    };
    if pa + pb != -2 * m as i64 {
        return not_met(format!(
            "PAF constants sum to {}, not {}",
            pa + pb,
            -2 * m as i64
        ));
    }
    let predicted = [
        power_sums(&ca.entries).1 - pa,
        power_sums(&cb.entries).1 - pb,
    ];
    let table = RootTable::new(l);
    let lags: Vec<usize> = (1..=(n - 1) / 2).map(|s| m * s).collect();
    let mut max_error = 0f64;
    for &lag in &lags {
        for (seq, p) in [(a, predicted[0]), (b, predicted[1])] {
            let err = (table.psd_unchecked(seq.entries(), lag) - p as f64).abs();
            max_error = max_error.max(err);
        }
    }
    if max_error > eps {
        return Err(Error::Verification(format!(
            "predicted PSD {predicted:?} off by {max_error:e} at lags {lags:?}"
        )));
    }
    Ok(CompressionOutcome::Certified(CompressionCertificate {
        m,
        compressed_a: ca.entries,
        compressed_b: cb.entries,
        paf_constants: [pa, pb],
        predicted,
        lags,
        max_error,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_errors() {
        let a: BinarySequence = "+++--".parse().unwrap();
        assert!(compression_certificate(&a, &a, 2, 1e-6).is_err());
        let b: BinarySequence = "++-+---+-".parse().unwrap();
        assert!(compression_certificate(&a, &b, 1, 1e-6).is_err());
    }

    #[test]
    fn identity_compression_of_a_pair() {
        let x: BinarySequence = "++-".parse().unwrap();
        match compression_certificate(&x, &x, 1, 1e-6).unwrap() {
            CompressionOutcome::Certified(c) => {
                assert_eq!(c.paf_constants, [-1, -1]);
                assert_eq!(c.predicted, [4, 4]);
            }
            CompressionOutcome::PremiseNotMet { reason, .. } => panic!("{reason}"),
        }
        // l = 5 pairs have no constant-PAF members
        let x: BinarySequence = "+++--".parse().unwrap();
        let y: BinarySequence = "++-+-".parse().unwrap();
        assert!(matches!(
            compression_certificate(&x, &y, 1, 1e-6).unwrap(),
            CompressionOutcome::PremiseNotMet { .. }
        ));
    }
}
