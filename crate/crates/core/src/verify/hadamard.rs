//! Bordered two-circulant-core Hadamard matrices of order `2l + 2`.
//!
//! Layout, rows and columns ordered `[border1, border2, A block, B block]`:
//!
//! ```text
//!   k11 k12 | 1 ... 1   1 ... 1
//!   k21 k22 | 1 ... 1  -1 ... -1
//!   --------+-------------------
//!    1   1  |    A         B
//!    1  -1  |    B^T      -A^T
//! ```
//!
//! where `A`, `B` are the circulants of the pair and `k` is the corner
//! block. Sign conventions for the corner differ between sources, so each
//! [`CornerVariant`] is tried in turn and the first one passing the exact
//! orthogonality check is kept.

use std::fmt::Write as _;

use serde::Serialize;

use super::pair::LegendrePairResult;
use crate::error::{Error, Result};
use crate::seq::BinarySequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CornerVariant {
    /// `[[1, 1], [1, -1]]`
    Standard,
    /// `[[-1, -1], [-1, 1]]`
    Negated,
    /// `[[1, -1], [1, 1]]`
    Transposed,
    /// `[[-1, 1], [-1, -1]]`
    TransposedNegated,
}

impl CornerVariant {
    pub const ALL: [CornerVariant; 4] = [
        CornerVariant::Standard,
        CornerVariant::Negated,
        CornerVariant::Transposed,
        CornerVariant::TransposedNegated,
    ];

    fn block(self) -> [[i8; 2]; 2] {
        match self {
            CornerVariant::Standard => [[1, 1], [1, -1]],
            CornerVariant::Negated => [[-1, -1], [-1, 1]],
            CornerVariant::Transposed => [[1, -1], [1, 1]],
            CornerVariant::TransposedNegated => [[-1, 1], [-1, -1]],
        }
    }
}

#[derive(Clone, Debug)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
    variant: CornerVariant,
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn variant(&self) -> CornerVariant {
        self.variant
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    /// `H H^T = n I` in exact integers.
    pub fn is_orthogonal(&self) -> bool {
        is_hadamard(&self.entries, self.order)
    }

    /// Rows of `+`/`-`, newline terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.order * (self.order + 1));
        for i in 0..self.order {
            for &v in self.row(i) {
                out.push(if v == 1 { '+' } else { '-' });
            }
            let _ = writeln!(out);
        }
        out
    }
}

fn is_hadamard(entries: &[i8], n: usize) -> bool {
    for i in 0..n {
        let ri = &entries[i * n..(i + 1) * n];
        for k in i..n {
            let rk = &entries[k * n..(k + 1) * n];
            let dot: i64 = ri.iter().zip(rk).map(|(&x, &y)| (x * y) as i64).sum();
            let expected = if i == k { n as i64 } else { 0 };
            if dot != expected {
                return false;
            }
        }
    }
    true
}

fn build(a: &BinarySequence, b: &BinarySequence, variant: CornerVariant) -> Vec<i8> {
    let l = a.len();
    let n = 2 * l + 2;
    let mut h = vec![0i8; n * n];
    let k = variant.block();
    let (av, bv) = (a.entries(), b.entries());
    let circ = |s: &[i8], i: usize, j: usize| s[(j + l - i) % l];
    for r in 0..2 {
        h[r * n] = k[r][0];
        h[r * n + 1] = k[r][1];
        for j in 0..l {
            h[r * n + 2 + j] = 1;
            h[r * n + 2 + l + j] = if r == 0 { 1 } else { -1 };
        }
    }
    for i in 0..l {
        let top = (2 + i) * n;
        let bottom = (2 + l + i) * n;
        h[top] = 1;
        h[top + 1] = 1;
        h[bottom] = 1;
        h[bottom + 1] = -1;
        for j in 0..l {
            h[top + 2 + j] = circ(av, i, j);
            h[top + 2 + l + j] = circ(bv, i, j);
            // transposes: (B^T)_{ij} = B_{ji}
            h[bottom + 2 + j] = circ(bv, j, i);
            h[bottom + 2 + l + j] = -circ(av, j, i);
        }
    }
    h
}

/// Builds and checks the matrix for a verified pair.
pub fn hadamard_from_pair(pair: &LegendrePairResult) -> Result<HadamardMatrix> {
    hadamard_from_sequences(&pair.a, &pair.b)
}

pub fn hadamard_from_sequences(a: &BinarySequence, b: &BinarySequence) -> Result<HadamardMatrix> {
    if a.len() != b.len() {
        return Err(Error::Invalid("sequences differ in length".into()));
    }
    let order = 2 * a.len() + 2;
    for variant in CornerVariant::ALL {
        let entries = build(a, b, variant);
        if is_hadamard(&entries, order) {
            return Ok(HadamardMatrix {
                order,
                entries,
                variant,
            });
        }
    }
    Err(Error::Verification(format!(
        "no corner variant gives an orthogonal matrix of order {order}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_eight() {
        let a: BinarySequence = "++-".parse().unwrap();
        let h = hadamard_from_sequences(&a, &a).unwrap();
        assert_eq!(h.order(), 8);
        assert!(h.is_orthogonal());
        assert_eq!(h.variant(), CornerVariant::Negated);
        assert_eq!(h.to_text().lines().count(), 8);
    }

    #[test]
    fn non_pair_is_rejected() {
        let a: BinarySequence = "+++--".parse().unwrap();
        assert!(matches!(
            hadamard_from_sequences(&a, &a),
            Err(Error::Verification(_))
        ));
    }
}
