//! Equivalence of pairs under cyclic shift, reversal and swapping `A`/`B`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::pair::LegendrePairResult;
use crate::seq::{apply_symmetry, paf_unchecked, BinarySequence};

/// Lexicographically smallest `+`/`-` string over all shift/revert images.
pub fn canonical_sequence(a: &BinarySequence) -> String {
    (0..a.len())
        .flat_map(|j| [false, true].map(|rev| apply_symmetry(a, j, rev).to_string()))
        .min()
        .expect("non-empty sequence")
}

/// Class identifier of a pair: both canonical images, smaller first.
pub fn pair_class_id(a: &BinarySequence, b: &BinarySequence) -> String {
    let (x, y) = (canonical_sequence(a), canonical_sequence(b));
    if x <= y {
        format!("{x}/{y}")
    } else {
        format!("{y}/{x}")
    }
}

fn paf_profile(a: &BinarySequence) -> Vec<i64> {
    (1..=(a.len() - 1) / 2)
        .map(|s| paf_unchecked(a.entries(), s))
        .collect()
}

/// Pairs of one equivalence class, split by PAF profile.
#[derive(Clone, Debug, Serialize)]
pub struct PairClass {
    pub class_id: String,
    /// Sequences sharing the PAF profile of the first pair's `A`.
    pub left: Vec<String>,
    /// Sequences with the complementary profile.
    pub right: Vec<String>,
    /// Distinct unordered pairs present in the input.
    pub edges: usize,
}

impl PairClass {
    /// `Some((r, s))` when the input holds every left-right pair, `K_{r,s}`.
    pub fn complete_bipartite(&self) -> Option<(usize, usize)> {
        let (r, s) = (self.left.len(), self.right.len());
        let full = if self.right.is_empty() {
            // self-complementary profile: every unordered pair incl. loops
            r * (r + 1) / 2
        } else {
            r * s
        };
        (self.edges == full).then_some((r, if s == 0 { r } else { s }))
    }

    pub fn describe(&self) -> String {
        match self.complete_bipartite() {
            Some((r, s)) => format!("K_{{{r},{s}}}"),
            None => format!(
                "{} of {}x{} edges",
                self.edges,
                self.left.len(),
                self.right.len()
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub classes: Vec<PairClass>,
}

impl SymmetryReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Groups pairs into shift/revert/swap classes, reporting the bipartite
/// structure of each class.
pub fn symmetry_reduce(pairs: &[LegendrePairResult]) -> SymmetryReport {
    let mut groups: BTreeMap<String, Vec<&LegendrePairResult>> = BTreeMap::new();
    for p in pairs {
        groups.entry(p.class_id.clone()).or_default().push(p);
    }
    let classes = groups
        .into_iter()
        .map(|(class_id, members)| {
            let left_profile = paf_profile(&members[0].a);
            let mut left = BTreeSet::new();
            let mut right = BTreeSet::new();
            let mut edges = BTreeSet::new();
            for p in members {
                let (x, y) = if paf_profile(&p.a) == left_profile {
                    (&p.a, &p.b)
                } else {
                    (&p.b, &p.a)
                };
                let (xs, ys) = (x.to_string(), y.to_string());
                left.insert(xs.clone());
                if paf_profile(y) == left_profile {
                    left.insert(ys.clone());
                    edges.insert(if xs <= ys { (xs, ys) } else { (ys, xs) });
                } else {
                    right.insert(ys.clone());
                    edges.insert((xs, ys));
                }
            }
            PairClass {
                class_id,
                left: left.into_iter().collect(),
                right: right.into_iter().collect(),
                edges: edges.len(),
            }
        })
        .collect();
    SymmetryReport { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_pair;

    #[test]
    fn canonical_is_invariant() {
        let a: BinarySequence = "++-+---".parse().unwrap();
        let c = canonical_sequence(&a);
        for j in 0..7 {
            for rev in [false, true] {
                assert_eq!(canonical_sequence(&apply_symmetry(&a, j, rev)), c);
            }
        }
    }

    #[test]
    fn single_pair_is_one_class() {
        let x: BinarySequence = "+++--".parse().unwrap();
        let y: BinarySequence = "++-+-".parse().unwrap();
        let p = verify_pair(&x, &y, 1e-6).unwrap();
        let report = symmetry_reduce(&[p]);
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.classes[0].describe(), "K_{1,1}");
    }

    #[test]
    fn shifted_partners_fill_the_class() {
        let x: BinarySequence = "+++--".parse().unwrap();
        let y: BinarySequence = "++-+-".parse().unwrap();
        let x2 = apply_symmetry(&x, 1, false);
        let pairs: Vec<_> = [(&x, &y), (&x2, &y)]
            .into_iter()
            .map(|(a, b)| verify_pair(a, b, 1e-6).unwrap())
            .collect();
        let report = symmetry_reduce(&pairs);
        assert_eq!(report.class_count(), 1);
        assert_eq!(report.classes[0].describe(), "K_{2,1}");
    }
}
