//! Lexicographic ranking of k-subsets and decoding of orbit selections.
//!
//! Subsets are of `{1..n}` and ranked from 0 in lexicographic order. An
//! orbit universe lists the orbits of one size class by ascending minimal
//! representative, so element `j` of a subset is the `j`-th such orbit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::OrbitDecomposition;
use crate::seq::BinarySequence;

/// Pascal's triangle in `u128`; `None` marks values that overflow.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<Option<u128>>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Option<u128>>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![Some(1u128); n + 1];
            for k in 1..n {
                let prev = &rows[n - 1];
                row[k] = match (prev[k - 1], prev[k]) {
                    (Some(a), Some(b)) => a.checked_add(b),
                    _ => None,
                };
            }
            rows.push(row);
        }
        Self { rows }
    }

    /// `C(n, k)`, zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Option<u128> {
        if k > n {
            return Some(0);
        }
        self.rows[n][k]
    }

    fn checked(&self, n: usize, k: usize) -> Result<u128> {
        self.get(n, k).ok_or(Error::RankOverflow)
    }
}

pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        // r * (n - i) is divisible by (i + 1) at every step
        r = r.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(r)
}

fn unrank_with(table: &BinomialTable, mut r: u128, k: usize, n: usize) -> Result<Vec<usize>> {
    let size = table.checked(n, k)?;
    if r >= size {
        return Err(Error::RankOutOfRange { rank: r, size });
    }
    let mut out = Vec::with_capacity(k);
    let mut x = 1usize;
    for i in 1..=k {
        loop {
            let c = table.checked(n - x, k - i)?;
            if c <= r {
                r -= c;
                x += 1;
            } else {
                break;
            }
        }
        out.push(x);
        x += 1;
    }
    Ok(out)
}

fn rank_with(table: &BinomialTable, subset: &[usize], n: usize) -> Result<u128> {
    let k = subset.len();
    let mut r = 0u128;
    let mut prev = 0usize;
    for (i, &t) in subset.iter().enumerate() {
        if t <= prev || t > n {
            return Err(Error::InvalidSelection(format!(
                "subset must be strictly increasing within 1..={n}, got {subset:?}"
            )));
        }
        for j in prev + 1..t {
            r += table.checked(n - j, k - i - 1)?;
        }
        prev = t;
    }
    Ok(r)
}

/// The `r`-th `k`-subset of `{1..n}` in lexicographic order.
pub fn subset_unrank(r: u128, k: usize, n: usize) -> Result<Vec<usize>> {
    if k > n {
        return Err(Error::RankOutOfRange { rank: r, size: 0 });
    }
    unrank_with(&BinomialTable::new(n), r, k, n)
}

/// Lexicographic rank of a sorted subset of `{1..n}`.
pub fn subset_rank(subset: &[usize], n: usize) -> Result<u128> {
    rank_with(&BinomialTable::new(n), subset, n)
}

/// Advances `t` to its lexicographic successor among `k`-subsets of
/// `{1..n}`; returns `false` (leaving `t` untouched) at the last subset.
pub fn subset_successor(t: &mut [usize], n: usize) -> bool {
    let k = t.len();
    let mut i = k;
    while i > 0 && t[i - 1] == n - k + i {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    t[i - 1] += 1;
    for j in i..k {
        t[j] = t[j - 1] + 1;
    }
    true
}

/// Which value the chosen orbits mark.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Plus,
    Minus,
}

impl Polarity {
    pub fn value(self) -> i8 {
        match self {
            Polarity::Plus => 1,
            Polarity::Minus => -1,
        }
    }

    /// Positions the chosen orbits must cover for the sequence to sum to +1.
    pub fn coverage(self, l: usize) -> usize {
        match self {
            Polarity::Plus => (l + 1) / 2,
            Polarity::Minus => (l - 1) / 2,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Plus => "plus",
            Polarity::Minus => "minus",
        })
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plus" | "+" | "+1" => Ok(Polarity::Plus),
            "minus" | "-" | "-1" => Ok(Polarity::Minus),
            other => Err(Error::Invalid(format!("unknown polarity {other:?}"))),
        }
    }
}

/// Number of orbits chosen per orbit size, written `2x1+19x3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Composition {
    /// `(orbit size, count)`, ascending by size, sizes unique.
    parts: Vec<(usize, usize)>,
}

impl Composition {
    pub fn new(parts: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut parts: Vec<(usize, usize)> = parts.into_iter().collect();
        parts.sort_unstable();
        if parts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Invalid(
                "orbit size listed twice in composition".into(),
            ));
        }
        if parts.iter().any(|&(size, _)| size == 0) {
            return Err(Error::Invalid("orbit size 0 in composition".into()));
        }
        Ok(Self { parts })
    }

    pub fn from_counts(decomp: &OrbitDecomposition, counts: &[usize]) -> Self {
        Self {
            parts: decomp
                .size_classes()
                .iter()
                .zip(counts)
                .filter(|&(_, &n)| n > 0)
                .map(|(c, &n)| (c.size, n))
                .collect(),
        }
    }

    /// Per-size-class counts aligned with `decomp.size_classes()`.
    pub fn counts_for(&self, decomp: &OrbitDecomposition) -> Result<Vec<usize>> {
        let classes = decomp.size_classes();
        let mut counts = vec![0usize; classes.len()];
        for &(size, n) in &self.parts {
            match decomp.class_of_size(size) {
                Some(i) if n <= classes[i].count() => counts[i] = n,
                Some(i) => {
                    return Err(Error::Invalid(format!(
                        "composition asks for {n} orbits of size {size}, only {} exist",
                        classes[i].count()
                    )))
                }
                None if n == 0 => {}
                None => {
                    return Err(Error::Invalid(format!("no orbits of size {size}")));
                }
            }
        }
        Ok(counts)
    }

    /// Total number of positions covered.
    pub fn coverage(&self) -> usize {
        self.parts.iter().map(|&(s, n)| s * n).sum()
    }

    pub fn parts(&self) -> &[(usize, usize)] {
        &self.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|&(size, n)| format!("{n}x{size}"))
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|term| {
                let (n, size) = term
                    .trim()
                    .split_once(['x', '*', '·'])
                    .ok_or_else(|| Error::Invalid(format!("bad composition term {term:?}")))?;
                let parse = |t: &str| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Invalid(format!("bad composition term {term:?}: {e}")))
                };
                Ok((parse(size)?, parse(n)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<String> for Composition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Composition> for String {
    fn from(c: Composition) -> String {
        c.to_string()
    }
}

/// A set of chosen orbits (indices into `OrbitDecomposition::selectable`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSelection {
    pub chosen: Vec<usize>,
    pub polarity: Polarity,
}

impl OrbitSelection {
    /// Selection from orbit representatives, as index sets are printed.
    pub fn from_representatives(
        decomp: &OrbitDecomposition,
        reps: &[usize],
        polarity: Polarity,
    ) -> Result<Self> {
        let mut chosen = reps
            .iter()
            .map(|&r| {
                decomp.orbit_with_representative(r).ok_or_else(|| {
                    Error::InvalidSelection(format!("{r} is not an orbit representative"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        chosen.sort_unstable();
        if chosen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSelection("orbit chosen twice".into()));
        }
        Ok(Self { chosen, polarity })
    }

    pub fn representatives(&self, decomp: &OrbitDecomposition) -> Vec<usize> {
        let mut reps: Vec<usize> = self
            .chosen
            .iter()
            .map(|&i| decomp.representative(i))
            .collect();
        reps.sort_unstable();
        reps
    }
}

/// Positions in chosen orbits get the polarity value, all others (residue
/// 0 included) the opposite one.
pub fn decode_selection(
    decomp: &OrbitDecomposition,
    sel: &OrbitSelection,
) -> Result<BinarySequence> {
    let l = decomp.l();
    let orbits = decomp.selectable();
    let mut covered = 0usize;
    let mut seen = vec![false; orbits.len()];
    let mark = sel.polarity.value();
    let mut entries = vec![-mark; l];
    for &i in &sel.chosen {
        let orbit = orbits
            .get(i)
            .ok_or_else(|| Error::InvalidSelection(format!("no orbit with index {i}")))?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidSelection("orbit chosen twice".into()));
        }
        covered += orbit.len();
        for &r in orbit {
            entries[(r + l - 1) % l] = mark;
        }
    }
    let expected = sel.polarity.coverage(l);
    if covered != expected {
        return Err(Error::InvalidSelection(format!(
            "chosen orbits cover {covered} positions, polarity {} needs {expected}",
            sel.polarity
        )));
    }
    BinarySequence::new(entries)
}

/// All sequences obtained by choosing `counts[i]` orbits from size class
/// `i`, ranked in mixed radix with the smallest orbit size most significant
/// and the lexicographic subset rank within each class.
#[derive(Clone, Debug)]
pub struct SelectionSpace {
    decomp: OrbitDecomposition,
    counts: Vec<usize>,
    polarity: Polarity,
    table: BinomialTable,
    radices: Vec<u128>,
    size: u128,
}

impl SelectionSpace {
    pub fn new(
        decomp: &OrbitDecomposition,
        composition: &Composition,
        polarity: Polarity,
    ) -> Result<Self> {
        let counts = composition.counts_for(decomp)?;
        let expected = polarity.coverage(decomp.l());
        if composition.coverage() != expected {
            return Err(Error::InvalidSelection(format!(
                "composition {composition} covers {} positions, polarity {polarity} needs {expected}",
                composition.coverage()
            )));
        }
        let max_n = decomp
            .size_classes()
            .iter()
            .map(|c| c.count())
            .max()
            .unwrap_or(0);
        let table = BinomialTable::new(max_n);
        let radices = decomp
            .size_classes()
            .iter()
            .zip(&counts)
            .map(|(c, &k)| table.checked(c.count(), k))
            .collect::<Result<Vec<_>>>()?;
        let size = radices
            .iter()
            .try_fold(1u128, |acc, &r| acc.checked_mul(r))
            .ok_or(Error::RankOverflow)?;
        Ok(Self {
            decomp: decomp.clone(),
            counts,
            polarity,
            table,
            radices,
            size,
        })
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn decomposition(&self) -> &OrbitDecomposition {
        &self.decomp
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    /// Per-class 1-based subsets for rank `r`.
    pub fn unrank_subsets(&self, r: u128) -> Result<Vec<Vec<usize>>> {
        if r >= self.size {
            return Err(Error::RankOutOfRange {
                rank: r,
                size: self.size,
            });
        }
        let mut digits = vec![0u128; self.radices.len()];
        let mut rest = r;
        for (i, &radix) in self.radices.iter().enumerate().rev() {
            digits[i] = rest % radix;
            rest /= radix;
        }
        self.decomp
            .size_classes()
            .iter()
            .zip(&self.counts)
            .zip(digits)
            .map(|((class, &k), d)| unrank_with(&self.table, d, k, class.count()))
            .collect()
    }

    pub fn rank_subsets(&self, subsets: &[Vec<usize>]) -> Result<u128> {
        let classes = self.decomp.size_classes();
        if subsets.len() != classes.len() {
            return Err(Error::InvalidSelection(
                "wrong number of size classes".into(),
            ));
        }
        let mut r = 0u128;
        for ((subset, class), (&k, &radix)) in subsets
            .iter()
            .zip(classes)
            .zip(self.counts.iter().zip(&self.radices))
        {
            if subset.len() != k {
                return Err(Error::InvalidSelection(format!(
                    "expected {k} orbits of size {}, got {}",
                    class.size,
                    subset.len()
                )));
            }
            r = r * radix + rank_with(&self.table, subset, class.count())?;
        }
        Ok(r)
    }

    pub fn subsets_to_selection(&self, subsets: &[Vec<usize>]) -> OrbitSelection {
        let mut chosen: Vec<usize> = self
            .decomp
            .size_classes()
            .iter()
            .zip(subsets)
            .flat_map(|(class, subset)| subset.iter().map(move |&j| class.orbits[j - 1]))
            .collect();
        chosen.sort_unstable();
        OrbitSelection {
            chosen,
            polarity: self.polarity,
        }
    }

    pub fn selection_to_subsets(&self, sel: &OrbitSelection) -> Result<Vec<Vec<usize>>> {
        let classes = self.decomp.size_classes();
        let mut subsets = vec![Vec::new(); classes.len()];
        for &orbit in &sel.chosen {
            let size = self.decomp.selectable()[orbit].len();
            let ci = self
                .decomp
                .class_of_size(size)
                .expect("orbit size has a class");
            let pos = classes[ci]
                .orbits
                .binary_search(&orbit)
                .expect("orbit listed in its class");
            subsets[ci].push(pos + 1);
        }
        for s in &mut subsets {
            s.sort_unstable();
        }
        Ok(subsets)
    }

    pub fn rank_to_selection(&self, r: u128) -> Result<OrbitSelection> {
        Ok(self.subsets_to_selection(&self.unrank_subsets(r)?))
    }

    pub fn rank_to_sequence(&self, r: u128) -> Result<BinarySequence> {
        decode_selection(&self.decomp, &self.rank_to_selection(r)?)
    }

    pub fn selection_rank(&self, sel: &OrbitSelection) -> Result<u128> {
        if sel.polarity != self.polarity {
            return Err(Error::InvalidSelection(
                "polarity differs from the space".into(),
            ));
        }
        self.rank_subsets(&self.selection_to_subsets(sel)?)
    }

    /// Cursor positioned at rank `r`.
    pub fn cursor(&self, r: u128) -> Result<Cursor<'_>> {
        Ok(Cursor {
            space: self,
            rank: r,
            subsets: self.unrank_subsets(r)?,
        })
    }
}

/// Sequential walk through a [`SelectionSpace`] in rank order.
pub struct Cursor<'a> {
    space: &'a SelectionSpace,
    rank: u128,
    subsets: Vec<Vec<usize>>,
}

impl Cursor<'_> {
    pub fn rank(&self) -> u128 {
        self.rank
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Chosen orbit indices, grouped by class.
    pub fn chosen_orbits(&self) -> impl Iterator<Item = usize> + '_ {
        let classes = self.space.decomp.size_classes();
        self.subsets
            .iter()
            .zip(classes)
            .flat_map(|(subset, class)| subset.iter().map(move |&j| class.orbits[j - 1]))
    }

    pub fn selection(&self) -> OrbitSelection {
        self.space.subsets_to_selection(&self.subsets)
    }

    /// Moves to the next rank; `false` once the space is exhausted.
    pub fn advance(&mut self) -> bool {
        if self.rank + 1 >= self.space.size {
            return false;
        }
        let classes = self.space.decomp.size_classes();
        for i in (0..self.subsets.len()).rev() {
            if subset_successor(&mut self.subsets[i], classes[i].count()) {
                self.rank += 1;
                return true;
            }
            let k = self.subsets[i].len();
            self.subsets[i] = (1..=k).collect();
        }
        unreachable!("rank below size implies a successor exists")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_theory::Subgroup;

    #[test]
    fn binomials() {
        assert_eq!(binomial(38, 19), Some(35_345_263_800));
        assert_eq!(binomial(44, 22), Some(2_104_098_963_720));
        let t = BinomialTable::new(60);
        assert_eq!(t.get(38, 19), binomial(38, 19));
        assert_eq!(t.get(3, 5), Some(0));
        assert_eq!(BinomialTable::new(140).get(140, 70), None);
    }

    #[test]
    fn unrank_extremes() {
        assert_eq!(subset_unrank(0, 3, 6).unwrap(), vec![1, 2, 3]);
        assert_eq!(subset_unrank(19, 3, 6).unwrap(), vec![4, 5, 6]);
        assert!(subset_unrank(20, 3, 6).is_err());
        assert_eq!(subset_unrank(0, 0, 4).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn published_lexrank() {
        let subset = vec![
            1, 3, 4, 7, 8, 12, 13, 14, 16, 19, 22, 23, 26, 27, 30, 31, 32, 35, 38,
        ];
        assert_eq!(subset_unrank(10_327_421_105, 19, 38).unwrap(), subset);
        assert_eq!(subset_rank(&subset, 38).unwrap(), 10_327_421_105);
    }

    #[test]
    fn rank_rejects_bad_subsets() {
        assert!(subset_rank(&[2, 1], 5).is_err());
        assert!(subset_rank(&[1, 6], 5).is_err());
    }

    #[test]
    fn successor_walks_in_rank_order() {
        let mut t = subset_unrank(0, 3, 7).unwrap();
        let mut r = 0u128;
        loop {
            assert_eq!(subset_rank(&t, 7).unwrap(), r);
            if !subset_successor(&mut t, 7) {
                break;
            }
            r += 1;
        }
        assert_eq!(r + 1, 35);
    }

    #[test]
    fn composition_syntax() {
        let c: Composition = "2x1+19x3".parse().unwrap();
        assert_eq!(c.parts(), &[(1, 2), (3, 19)]);
        assert_eq!(c.coverage(), 59);
        assert_eq!(c.to_string(), "2x1+19x3");
        assert!("2x1+3x1".parse::<Composition>().is_err());
        assert!("two".parse::<Composition>().is_err());
    }

    #[test]
    fn selection_space_h1_case_one() {
        let h = Subgroup::new(117, [1, 16, 22]).unwrap();
        let d = OrbitDecomposition::new(&h).unwrap();
        let space = SelectionSpace::new(&d, &"2x1+19x3".parse().unwrap(), Polarity::Plus).unwrap();
        assert_eq!(space.size(), 35_345_263_800);
        let two = SelectionSpace::new(&d, &"1x1+19x3".parse().unwrap(), Polarity::Minus).unwrap();
        assert_eq!(two.size(), 70_690_527_600);
        assert!(SelectionSpace::new(&d, &"1x1+19x3".parse().unwrap(), Polarity::Plus).is_err());
    }

    #[test]
    fn decode_and_complement() {
        let h = Subgroup::new(15, [1, 4]).unwrap();
        let d = OrbitDecomposition::new(&h).unwrap();
        let plus =
            OrbitSelection::from_representatives(&d, &[1, 2, 5, 7, 10], Polarity::Plus).unwrap();
        let a = decode_selection(&d, &plus).unwrap();
        assert!(a.is_normalized());
        assert_eq!(a.at_residue(0), -1);
        let minus = OrbitSelection {
            polarity: Polarity::Minus,
            ..plus.clone()
        };
        // coverage 8 does not fit polarity minus at l = 15
        assert!(decode_selection(&d, &minus).is_err());
        assert!(OrbitSelection::from_representatives(&d, &[4], Polarity::Plus).is_err());
    }

    #[test]
    fn cursor_matches_unrank() {
        let h = Subgroup::new(15, [1, 4]).unwrap();
        let d = OrbitDecomposition::new(&h).unwrap();
        let space = SelectionSpace::new(&d, &"1x1+3x2".parse().unwrap(), Polarity::Minus).unwrap();
        assert_eq!(space.size(), 2 * 20);
        let mut cur = space.cursor(0).unwrap();
        let mut n = 1;
        while cur.advance() {
            let expect = space.rank_to_selection(cur.rank()).unwrap();
            assert_eq!(cur.selection(), expect);
            assert_eq!(space.selection_rank(&expect).unwrap(), cur.rank());
            n += 1;
        }
        assert_eq!(n, 40);
    }
}
