//! JSON files of verified pairs, one record per pair, each sequence given
//! by the representatives of its chosen orbits.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{decode_selection, OrbitSelection, Polarity};
use crate::error::{Error, Result};
use crate::number_theory::{OrbitDecomposition, Subgroup};
use crate::search::{MatchResult, SearchPlan};
use crate::seq::{psd_exact_third, BinarySequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub l: usize,
    pub subgroup: Vec<usize>,
    pub polarity_a: Polarity,
    pub polarity_b: Polarity,
    #[serde(rename = "I_A")]
    pub i_a: Vec<usize>,
    #[serde(rename = "I_B")]
    pub i_b: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_a: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_b: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psd_third: Option<[i64; 2]>,
    /// Sequences as `+`/`-` strings; checked against `I_A`/`I_B` on load.
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
}

impl PairRecord {
    /// Record for two sequences that are unions of orbits of `subgroup`.
    pub fn from_sequences(
        subgroup: &Subgroup,
        a: &BinarySequence,
        b: &BinarySequence,
        ranks: Option<(u128, u128)>,
    ) -> Result<Self> {
        let decomp = OrbitDecomposition::new(subgroup)?;
        let (sel_a, sel_b) = (selection_of(&decomp, a)?, selection_of(&decomp, b)?);
        let psd_third = (a.len() % 3 == 0).then(|| -> Result<[i64; 2]> {
            Ok([psd_exact_third(a.entries())?, psd_exact_third(b.entries())?])
        });
        Ok(Self {
            l: a.len(),
            subgroup: subgroup.elements().to_vec(),
            polarity_a: sel_a.polarity,
            polarity_b: sel_b.polarity,
            i_a: sel_a.representatives(&decomp),
            i_b: sel_b.representatives(&decomp),
            rank_a: ranks.map(|r| r.0),
            rank_b: ranks.map(|r| r.1),
            psd_third: psd_third.transpose()?,
            a: Some(a.to_string()),
            b: Some(b.to_string()),
        })
    }

    /// Record for a verified match; `plans` are the sources it refers to.
    pub fn from_match(plans: &[SearchPlan], m: &MatchResult) -> Result<Self> {
        let pair = m
            .pair
            .as_ref()
            .ok_or_else(|| Error::Invalid("match was not verified".into()))?;
        let subgroup = plans[m.source_a].subgroup()?;
        if plans[m.source_b].subgroup != plans[m.source_a].subgroup {
            return Err(Error::Invalid(
                "matched records come from different subgroups".into(),
            ));
        }
        Self::from_sequences(&subgroup, &pair.a, &pair.b, Some((m.rank_a, m.rank_b)))
    }

    pub fn subgroup(&self) -> Result<Subgroup> {
        Subgroup::new(self.l, self.subgroup.iter().copied())
    }

    /// Decodes both sequences from the index sets, cross-checking the
    /// optional explicit strings.
    pub fn sequences(&self) -> Result<(BinarySequence, BinarySequence)> {
        let decomp = OrbitDecomposition::new(&self.subgroup()?)?;
        let decode = |idx: &[usize], pol: Polarity, explicit: &Option<String>, which: &str| {
            let sel = OrbitSelection::from_representatives(&decomp, idx, pol)?;
            let seq = decode_selection(&decomp, &sel)?;
            if let Some(s) = explicit {
                if s != &seq.to_string() {
                    return Err(Error::Invalid(format!("{which} does not match I_{which}")));
                }
            }
            Ok(seq)
        };
        Ok((
            decode(&self.i_a, self.polarity_a, &self.a, "A")?,
            decode(&self.i_b, self.polarity_b, &self.b, "B")?,
        ))
    }
}

/// The orbit selection a sequence is made of, if it is a union of orbits.
fn selection_of(decomp: &OrbitDecomposition, a: &BinarySequence) -> Result<OrbitSelection> {
    // residue 0 always carries the value opposite to the polarity
    let polarity = if a.at_residue(0) == -1 {
        Polarity::Plus
    } else {
        Polarity::Minus
    };
    let mark = polarity.value();
    let mut chosen = Vec::new();
    for (i, orbit) in decomp.selectable().iter().enumerate() {
        let first = a.at_residue(orbit[0]);
        if orbit.iter().any(|&r| a.at_residue(r) != first) {
            return Err(Error::InvalidSelection(format!(
                "sequence is not constant on the orbit of {}",
                orbit[0]
            )));
        }
        if first == mark {
            chosen.push(i);
        }
    }
    Ok(OrbitSelection { chosen, polarity })
}

pub fn write_pairs(path: &Path, records: &[PairRecord]) -> Result<()> {
    let text = serde_json::to_string_pretty(records)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

pub fn read_pairs(path: &Path) -> Result<Vec<PairRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::published;

    #[test]
    fn round_trip_published() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pairs.json");
        let recs: Vec<PairRecord> = published::all()
            .iter()
            .map(|p| {
                let (a, b) = p.sequences().unwrap();
                let ranks = match p.encoding {
                    published::Encoding::Ranks(x, y) => Some((x, y)),
                    published::Encoding::Indices(..) => None,
                };
                PairRecord::from_sequences(&p.family.subgroup(), &a, &b, ranks).unwrap()
            })
            .collect();
        write_pairs(&path, &recs).unwrap();
        let back = read_pairs(&path).unwrap();
        assert_eq!(back, recs);
        for r in &back {
            let (a, b) = r.sequences().unwrap();
            assert_eq!(Some(a.to_string()), r.a);
            assert_eq!(Some(b.to_string()), r.b);
        }
        // the first l = 117 record lists the printed index set
        assert_eq!(back[0].i_a, published::L117_H1_INDEX_SETS[0].0);
        assert_eq!(back[0].psd_third, Some([64, 172]));
    }

    #[test]
    fn tampered_string_is_rejected() {
        let p = &published::all()[0];
        let (a, b) = p.sequences().unwrap();
        let mut r = PairRecord::from_sequences(&p.family.subgroup(), &a, &b, None).unwrap();
        r.a = Some(b.to_string());
        assert!(r.sequences().is_err());
    }
}
