//! Known Legendre pairs of lengths 117, 129, 133 and 147, given either as
//! orbit-representative index sets or as mixed-radix LexRanks.

use crate::combinatorics::{
    decode_selection, Composition, OrbitSelection, Polarity, SelectionSpace,
};
use crate::error::Result;
use crate::number_theory::{OrbitDecomposition, Subgroup};
use crate::seq::BinarySequence;

/// How one published pair is encoded.
#[derive(Clone, Copy, Debug)]
pub enum Encoding {
    /// Representatives of the chosen orbits of `A` and `B`.
    Indices(&'static [usize], &'static [usize]),
    /// Ranks in the selection space of the family.
    Ranks(u128, u128),
}

#[derive(Clone, Copy, Debug)]
pub struct PublishedPair {
    pub family: &'static Family,
    pub label: &'static str,
    pub encoding: Encoding,
    /// Exact PSD values at the lag `l/p` singled out for this family.
    pub psd_at_lag: Option<[i64; 2]>,
}

/// Shared search parameters of a group of published pairs.
#[derive(Debug)]
pub struct Family {
    pub name: &'static str,
    pub l: usize,
    pub subgroup: &'static [usize],
    pub composition: &'static str,
    pub polarity: Polarity,
    /// Lag at which `psd_at_lag` is stated (`l/3`, or `19` for `l = 133`).
    pub lag: usize,
}

impl Family {
    pub fn subgroup(&self) -> Subgroup {
        Subgroup::new(self.l, self.subgroup.iter().copied()).expect("published subgroup")
    }

    pub fn decomposition(&self) -> OrbitDecomposition {
        OrbitDecomposition::new(&self.subgroup()).expect("published subgroup")
    }

    pub fn composition(&self) -> Composition {
        self.composition.parse().expect("published composition")
    }

    pub fn space(&self) -> Result<SelectionSpace> {
        SelectionSpace::new(&self.decomposition(), &self.composition(), self.polarity)
    }
}

impl PublishedPair {
    /// Decodes both sequences.
    pub fn sequences(&self) -> Result<(BinarySequence, BinarySequence)> {
        let f = self.family;
        match self.encoding {
            Encoding::Indices(ia, ib) => {
                let d = f.decomposition();
                let a = OrbitSelection::from_representatives(&d, ia, f.polarity)?;
                let b = OrbitSelection::from_representatives(&d, ib, f.polarity)?;
                Ok((decode_selection(&d, &a)?, decode_selection(&d, &b)?))
            }
            Encoding::Ranks(ra, rb) => {
                let space = f.space()?;
                Ok((space.rank_to_sequence(ra)?, space.rank_to_sequence(rb)?))
            }
        }
    }
}

pub static L117_H1: Family = Family {
    name: "117/H1",
    l: 117,
    subgroup: &[1, 16, 22],
    composition: "2x1+19x3",
    polarity: Polarity::Plus,
    lag: 39,
};

pub static L117_H4: Family = Family {
    name: "117/H4",
    l: 117,
    subgroup: &[1, 61, 94],
    composition: "2x1+19x3",
    polarity: Polarity::Plus,
    lag: 39,
};

pub static L129: Family = Family {
    name: "129",
    l: 129,
    subgroup: &[1, 49, 79],
    composition: "2x1+21x3",
    polarity: Polarity::Plus,
    lag: 43,
};

pub static L147: Family = Family {
    name: "147",
    l: 147,
    subgroup: &[1, 67, 79],
    composition: "2x1+24x3",
    polarity: Polarity::Plus,
    lag: 49,
};

pub static L133: Family = Family {
    name: "133",
    l: 133,
    subgroup: &[1, 11, 121],
    composition: "22x3",
    polarity: Polarity::Minus,
    lag: 19,
};

const P64_172: Option<[i64; 2]> = Some([64, 172]);

/// Index sets of the ten length-117 pairs found with `H1`.
pub static L117_H1_INDEX_SETS: [(&[usize], &[usize]); 10] = [
    (
        &[
            1, 3, 4, 7, 8, 13, 14, 17, 19, 24, 28, 29, 36, 39, 40, 47, 51, 56, 63, 78, 95,
        ],
        &[
            2, 5, 7, 9, 13, 14, 18, 19, 20, 24, 34, 36, 39, 40, 42, 47, 56, 58, 73, 78, 79,
        ],
    ),
    (
        &[
            1, 4, 8, 10, 12, 18, 20, 29, 34, 35, 36, 39, 40, 47, 56, 57, 58, 63, 73, 78, 95,
        ],
        &[
            3, 5, 6, 7, 8, 9, 10, 12, 13, 14, 18, 19, 20, 26, 28, 39, 40, 41, 47, 56, 78,
        ],
    ),
    (
        &[
            1, 2, 4, 6, 7, 8, 10, 14, 18, 29, 34, 36, 39, 47, 51, 56, 63, 73, 78, 79, 95,
        ],
        &[
            2, 3, 5, 7, 10, 12, 13, 14, 20, 24, 26, 28, 34, 36, 39, 40, 41, 47, 56, 63, 78,
        ],
    ),
    (
        &[
            2, 3, 6, 7, 9, 19, 21, 26, 29, 34, 39, 40, 41, 47, 56, 58, 63, 73, 78, 79, 95,
        ],
        &[
            1, 2, 3, 4, 5, 14, 17, 18, 25, 26, 29, 35, 36, 39, 40, 56, 57, 58, 63, 73, 78,
        ],
    ),
    (
        &[
            2, 3, 9, 10, 17, 18, 19, 20, 25, 34, 36, 39, 41, 47, 56, 57, 58, 73, 78, 79, 95,
        ],
        &[
            1, 2, 4, 8, 9, 13, 14, 17, 21, 26, 29, 39, 40, 42, 56, 57, 58, 63, 73, 78, 95,
        ],
    ),
    (
        &[
            1, 2, 4, 5, 6, 8, 13, 17, 18, 19, 21, 34, 36, 39, 40, 41, 47, 51, 56, 73, 78,
        ],
        &[
            2, 4, 7, 8, 9, 10, 13, 18, 24, 25, 29, 35, 39, 40, 51, 56, 63, 73, 78, 79, 95,
        ],
    ),
    (
        &[
            2, 5, 6, 7, 8, 10, 13, 17, 18, 20, 21, 36, 39, 40, 41, 51, 58, 73, 78, 79, 95,
        ],
        &[
            3, 4, 5, 7, 10, 14, 17, 18, 26, 28, 29, 35, 36, 39, 40, 41, 57, 63, 78, 79, 95,
        ],
    ),
    (
        &[
            3, 4, 5, 7, 8, 18, 21, 24, 25, 28, 29, 34, 39, 40, 41, 42, 47, 56, 73, 78, 95,
        ],
        &[
            3, 9, 14, 17, 19, 21, 25, 28, 29, 34, 35, 39, 40, 47, 51, 57, 58, 73, 78, 79, 95,
        ],
    ),
    (
        &[
            1, 2, 4, 6, 7, 9, 10, 12, 13, 14, 18, 28, 29, 34, 35, 39, 41, 42, 56, 78, 95,
        ],
        &[
            5, 6, 8, 9, 10, 13, 14, 19, 20, 25, 28, 34, 36, 39, 41, 51, 56, 58, 63, 73, 78,
        ],
    ),
    (
        &[
            1, 2, 5, 7, 8, 9, 19, 20, 24, 29, 35, 36, 39, 40, 51, 58, 63, 73, 78, 79, 95,
        ],
        &[
            5, 7, 9, 10, 13, 14, 17, 20, 21, 26, 28, 35, 39, 40, 42, 56, 57, 63, 78, 79, 95,
        ],
    ),
];

/// LexRanks of the same ten pairs, in the same order.
pub static L117_H1_RANKS: [(u128, u128); 10] = [
    (10327421105, 25363140085),
    (15300082821, 29082145926),
    (5172847060, 20669267508),
    (21265971921, 810444739),
    (22124932714, 6023154169),
    (4370665803, 24003646556),
    (24634133277, 27568254144),
    (27457918899, 31248697558),
    (5218049000, 33814036464),
    (6896605532, 34222709639),
];

/// LexRanks of length-117 pairs found with `H4`.
pub static L117_H4_RANKS: [(u128, u128); 9] = [
    (8221110983, 12044164377),
    (12702071296, 15372978390),
    (23944768832, 15178414396),
    (20338660993, 90051589),
    (7146518669, 23738703053),
    (3073133857, 30770050335),
    (32540516078, 3097218289),
    (33749219312, 4797783684),
    (5422010999, 7269176966),
];

pub static L129_INDEX_SETS: [(&[usize], &[usize]); 2] = [
    (
        &[
            1, 2, 5, 13, 17, 19, 21, 22, 25, 26, 27, 34, 39, 43, 50, 55, 60, 62, 63, 68, 73, 78, 86,
        ],
        &[
            1, 3, 11, 12, 13, 17, 21, 26, 31, 34, 35, 42, 43, 47, 50, 52, 57, 60, 62, 68, 70, 78,
            86,
        ],
    ),
    (
        &[
            1, 2, 5, 13, 17, 19, 21, 22, 25, 26, 27, 34, 39, 43, 50, 55, 60, 62, 63, 68, 73, 78, 86,
        ],
        &[
            1, 2, 3, 4, 5, 6, 10, 11, 12, 17, 19, 20, 21, 22, 27, 30, 34, 43, 50, 57, 70, 73, 86,
        ],
    ),
];

pub static L147_INDEX_SET: (&[usize], &[usize]) = (
    &[
        1, 2, 3, 5, 7, 8, 10, 14, 16, 17, 19, 21, 27, 35, 38, 39, 49, 52, 57, 61, 70, 72, 74, 83,
        87, 98,
    ],
    &[
        1, 2, 6, 7, 9, 10, 12, 16, 17, 19, 23, 24, 26, 35, 39, 46, 48, 49, 50, 59, 65, 68, 70, 78,
        85, 98,
    ],
);

pub const L147_RANK: (u128, u128) = (2279447240326, 6981583007090);

pub static L147_RANKS_4_292: [(u128, u128); 3] = [
    (1685512212865, 3612702197526),
    (2926263388957, 265692014998),
    (4357037511235, 3728601853735),
];

/// Five length-133 pairs (ranks mark the `-1` positions) with their PSD
/// values at lags 19, 38 and 57.
pub static L133_RANKS: [((u128, u128), [i64; 2]); 5] = [
    ((128572618842, 210086022915), [176, 92]),
    ((17644506807, 41167368128), [92, 176]),
    ((179364459458, 27235734754), [36, 232]),
    ((213277890206, 251235525902), [92, 176]),
    ((272147218211, 279717372516), [92, 176]),
];

const LABELS_10: [&str; 10] = ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10"];

/// Every published pair in one list.
pub fn all() -> Vec<PublishedPair> {
    let mut out = Vec::new();
    for (i, &(a, b)) in L117_H1_INDEX_SETS.iter().enumerate() {
        out.push(PublishedPair {
            family: &L117_H1,
            label: LABELS_10[i],
            encoding: Encoding::Indices(a, b),
            psd_at_lag: P64_172,
        });
    }
    for (i, &(a, b)) in L117_H1_RANKS.iter().enumerate() {
        out.push(PublishedPair {
            family: &L117_H1,
            label: LABELS_10[i],
            encoding: Encoding::Ranks(a, b),
            psd_at_lag: P64_172,
        });
    }
    for (i, &(a, b)) in L117_H4_RANKS.iter().enumerate() {
        out.push(PublishedPair {
            family: &L117_H4,
            label: LABELS_10[i],
            encoding: Encoding::Ranks(a, b),
            psd_at_lag: None,
        });
    }
    for (i, &(a, b)) in L129_INDEX_SETS.iter().enumerate() {
        out.push(PublishedPair {
            family: &L129,
            label: LABELS_10[i],
            encoding: Encoding::Indices(a, b),
            psd_at_lag: Some([148, 112]),
        });
    }
    out.push(PublishedPair {
        family: &L147,
        label: "148/148",
        encoding: Encoding::Indices(L147_INDEX_SET.0, L147_INDEX_SET.1),
        psd_at_lag: Some([148, 148]),
    });
    out.push(PublishedPair {
        family: &L147,
        label: "148/148",
        encoding: Encoding::Ranks(L147_RANK.0, L147_RANK.1),
        psd_at_lag: Some([148, 148]),
    });
    for (i, &(a, b)) in L147_RANKS_4_292.iter().enumerate() {
        out.push(PublishedPair {
            family: &L147,
            label: LABELS_10[i],
            encoding: Encoding::Ranks(a, b),
            psd_at_lag: Some([4, 292]),
        });
    }
    for (i, &((a, b), psd)) in L133_RANKS.iter().enumerate() {
        out.push(PublishedPair {
            family: &L133,
            label: LABELS_10[i],
            encoding: Encoding::Ranks(a, b),
            psd_at_lag: Some(psd),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::psd;
    use crate::verify::verify_pair;

    #[test]
    fn every_published_pair_verifies() {
        for p in all() {
            let (a, b) = p.sequences().unwrap();
            let r = verify_pair(&a, &b, 1e-6)
                .unwrap_or_else(|e| panic!("{} {}: {e}", p.family.name, p.label));
            if let Some(expected) = p.psd_at_lag {
                let lag = p.family.lag;
                let got = [
                    psd(r.a.entries(), lag).unwrap(),
                    psd(r.b.entries(), lag).unwrap(),
                ];
                let got = got.map(|v| v.round() as i64);
                assert_eq!(got, expected, "{} {}", p.family.name, p.label);
            }
        }
    }
}
