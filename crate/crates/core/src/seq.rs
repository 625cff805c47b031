//! Kernels on ±1 and integer sequences.
//!
//! Formula-facing positions are 1-indexed (`a_1..a_l`); storage is
//! 0-indexed, so `entries[i]` holds `a_{i+1}`. Position `l` corresponds to
//! the residue `0` of `Z_l`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexValue = Complex64;

/// A ±1 sequence of odd length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySequence {
    entries: Vec<i8>,
}

impl BinarySequence {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 == 0 {
            return Err(Error::InvalidSequence(format!(
                "length must be odd and positive, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&v| v != 1 && v != -1) {
            return Err(Error::InvalidSequence(format!("entry {bad} is not ±1")));
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Entry `a_p` for a 1-indexed position `p`.
    pub fn at(&self, p: usize) -> i8 {
        self.entries[p - 1]
    }

    /// Entry at residue `r` of `Z_l` (residue 0 is position `l`).
    pub fn at_residue(&self, r: usize) -> i8 {
        let l = self.len();
        self.entries[(r % l + l - 1) % l]
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().map(|&v| v as i64).sum()
    }

    /// `a_1 + ... + a_l = 1`.
    pub fn is_normalized(&self) -> bool {
        self.sum() == 1
    }

    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    pub fn to_int(&self) -> IntSequence {
        IntSequence {
            entries: self.entries.iter().map(|&v| v as i64).collect(),
        }
    }

    /// Residues `r` in `Z_l` with `a_r = +1`.
    pub fn plus_residues(&self) -> Vec<usize> {
        let l = self.len();
        (0..l).filter(|&r| self.at_residue(r) == 1).collect()
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.entries {
            f.write_str(if v == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::InvalidSequence(format!(
                    "unexpected character {other:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Self::new(entries)
    }
}

/// An integer sequence, typically a compression of a ±1 sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntSequence {
    pub entries: Vec<i64>,
}

impl IntSequence {
    pub fn new(entries: Vec<i64>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidSequence(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        Ok(Self { entries })
    }
}

impl AsRef<[i64]> for IntSequence {
    fn as_ref(&self) -> &[i64] {
        &self.entries
    }
}

impl AsRef<[i8]> for BinarySequence {
    fn as_ref(&self) -> &[i8] {
        &self.entries
    }
}

/// Periodic autocorrelation at lag `s`, `0 <= s < len`.
pub fn paf<T: Copy + Into<i64>>(a: &[T], s: usize) -> Result<i64> {
    let n = a.len();
    if s >= n {
        return Err(Error::LagOutOfRange { lag: s, len: n });
    }
    Ok(paf_unchecked(a, s))
}

pub(crate) fn paf_unchecked<T: Copy + Into<i64>>(a: &[T], s: usize) -> i64 {
    let n = a.len();
    (0..n).map(|i| a[i].into() * a[(i + s) % n].into()).sum()
}

/// The `l` powers of the primitive root `exp(2*pi*i/l)`.
///
/// DFT evaluation indexes this table with `(s * (i-1)) mod l` and sums in
/// ascending `i`, so identical inputs give bit-identical results.
#[derive(Clone, Debug)]
pub struct RootTable {
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(l: usize) -> Self {
        let roots = (0..l)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (l as f64);
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        Self { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, k: usize) -> Complex64 {
        self.roots[k % self.roots.len()]
    }

    /// DFT at lag `s`, `1 <= s <= l`.
    pub fn dft<T: Copy + Into<i64>>(&self, a: &[T], s: usize) -> Result<Complex64> {
        let l = self.roots.len();
        if a.len() != l {
            return Err(Error::InvalidSequence(format!(
                "sequence length {} does not match root table {l}",
                a.len()
            )));
        }
        if s == 0 || s > l {
            return Err(Error::LagOutOfRange { lag: s, len: l });
        }
        Ok(self.dft_unchecked(a, s))
    }

    pub(crate) fn dft_unchecked<T: Copy + Into<i64>>(&self, a: &[T], s: usize) -> Complex64 {
        let l = self.roots.len();
        let step = s % l;
        let mut idx = 0usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for &v in a {
            acc += self.roots[idx] * (v.into() as f64);
            idx += step;
            if idx >= l {
                idx -= l;
            }
        }
        acc
    }

    pub fn psd<T: Copy + Into<i64>>(&self, a: &[T], s: usize) -> Result<f64> {
        self.dft(a, s).map(|z| z.norm_sqr())
    }

    pub(crate) fn psd_unchecked<T: Copy + Into<i64>>(&self, a: &[T], s: usize) -> f64 {
        self.dft_unchecked(a, s).norm_sqr()
    }
}

/// DFT at lag `s` (`1 <= s <= len`), double precision.
pub fn dft<T: Copy + Into<i64>>(a: &[T], s: usize) -> Result<Complex64> {
    RootTable::new(a.len()).dft(a, s)
}

/// PSD at lag `s`: `|dft(a, s)|^2`.
pub fn psd<T: Copy + Into<i64>>(a: &[T], s: usize) -> Result<f64> {
    RootTable::new(a.len()).psd(a, s)
}

/// `m`-compression: entry `j` is `sum_{i<m} a_{n*i+j}` with `n = l/m`.
pub fn compress<T: Copy + Into<i64>>(a: &[T], m: usize) -> Result<IntSequence> {
    let l = a.len();
    if m == 0 || l % m != 0 {
        return Err(Error::NotDivisible { divisor: m, len: l });
    }
    let n = l / m;
    let entries = (0..n)
        .map(|j| (0..m).map(|i| a[n * i + j].into()).sum())
        .collect();
    Ok(IntSequence { entries })
}

/// Sums over positions congruent to 1, 2 and 0 (mod 3), in that order.
pub fn residue_sums_mod3<T: Copy + Into<i64>>(a: &[T]) -> Result<[i64; 3]> {
    let l = a.len();
    if l % 3 != 0 {
        return Err(Error::NotDivisible { divisor: 3, len: l });
    }
    let mut sums = [0i64; 3];
    for (i, &v) in a.iter().enumerate() {
        sums[i % 3] += v.into();
    }
    Ok(sums)
}

/// The quadratic form `x1^2 + x2^2 + x3^2 - x1 x2 - x1 x3 - x2 x3`.
pub fn third_form([x1, x2, x3]: [i64; 3]) -> i64 {
    x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 - x1 * x3 - x2 * x3
}

/// Exact PSD at lag `l/3` from the residue sums.
pub fn psd_exact_third<T: Copy + Into<i64>>(a: &[T]) -> Result<i64> {
    residue_sums_mod3(a).map(third_form)
}

/// `rho^i(sigma^shift(a))` where `sigma` is the forward cyclic shift
/// (`sigma(a)_p = a_{p-1}`) and `rho` reverses the sequence.
pub fn apply_symmetry(a: &BinarySequence, shift: usize, revert: bool) -> BinarySequence {
    let l = a.len();
    let shift = shift % l;
    let mut out: Vec<i8> = (0..l).map(|i| a.entries[(i + l - shift) % l]).collect();
    if revert {
        out.reverse();
    }
    BinarySequence { entries: out }
}

/// First and second power sums.
pub fn power_sums<T: Copy + Into<i64>>(a: &[T]) -> (i64, i64) {
    a.iter().fold((0, 0), |(p1, p2), &v| {
        let v: i64 = v.into();
        (p1 + v, p2 + v * v)
    })
}
