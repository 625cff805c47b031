use serde::Serialize;

use super::units::{gcd, Subgroup};
use crate::error::{Error, Result};

/// Orbits of the same size among the selectable orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeClass {
    pub size: usize,
    /// Indices into [`OrbitDecomposition::selectable`], ascending.
    pub orbits: Vec<usize>,
    /// Orbits of this size whose elements are `≡ j (mod 3)`, for `j = 0, 1, 2`.
    /// Present only when `3 | l` and every `h ∈ H` is `≡ 1 (mod 3)`.
    pub residue_counts: Option<[usize; 3]>,
}

impl SizeClass {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

/// Orbits of `H` acting on `Z_l` by multiplication.
///
/// `{0}` is always an orbit of its own. It is kept out of the selectable
/// universe: decoded sequences give residue 0 the value opposite to the one
/// marked by the chosen orbits.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitDecomposition {
    l: usize,
    subgroup: Subgroup,
    /// Non-zero orbits, sorted internally, listed by ascending minimum.
    selectable: Vec<Vec<usize>>,
    /// Orbit index of each residue; `usize::MAX` for residue 0.
    orbit_of: Vec<usize>,
    size_classes: Vec<SizeClass>,
}

impl OrbitDecomposition {
    pub fn new(subgroup: &Subgroup) -> Result<Self> {
        let l = subgroup.modulus();
        // Subgroup construction already validates; re-check coprimality in
        // case it was deserialized.
        if let Some(&h) = subgroup.elements().iter().find(|&&h| gcd(h, l) != 1) {
            return Err(Error::NotUnit { t: h, modulus: l });
        }
        let mut orbit_of = vec![usize::MAX; l];
        let mut selectable: Vec<Vec<usize>> = Vec::new();
        for r in 1..l {
            if orbit_of[r] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = subgroup
                .elements()
                .iter()
                .map(|&h| ((h as u128 * r as u128) % l as u128) as usize)
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            let idx = selectable.len();
            for &x in &orbit {
                if orbit_of[x] != usize::MAX {
                    return Err(Error::InvalidSubgroup(format!(
                        "orbits overlap at {x}; {subgroup} is not a group"
                    )));
                }
                orbit_of[x] = idx;
            }
            selectable.push(orbit);
        }

        let residue_aware = l % 3 == 0 && subgroup.all_one_mod3();
        let mut sizes: Vec<usize> = selectable.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let size_classes = sizes
            .into_iter()
            .map(|size| {
                let orbits: Vec<usize> = (0..selectable.len())
                    .filter(|&i| selectable[i].len() == size)
                    .collect();
                let residue_counts = residue_aware.then(|| {
                    let mut counts = [0usize; 3];
                    for &i in &orbits {
                        counts[selectable[i][0] % 3] += 1;
                    }
                    counts
                });
                SizeClass {
                    size,
                    orbits,
                    residue_counts,
                }
            })
            .collect();

        Ok(Self {
            l,
            subgroup: subgroup.clone(),
            selectable,
            orbit_of,
            size_classes,
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Non-zero orbits by ascending representative.
    pub fn selectable(&self) -> &[Vec<usize>] {
        &self.selectable
    }

    /// All orbits partitioning `Z_l`, `{0}` first.
    pub fn orbits(&self) -> impl Iterator<Item = &[usize]> {
        std::iter::once(&[0usize][..]).chain(self.selectable.iter().map(Vec::as_slice))
    }

    pub fn representative(&self, orbit: usize) -> usize {
        self.selectable[orbit][0]
    }

    /// Index of the selectable orbit whose minimal element is `rep`.
    pub fn orbit_with_representative(&self, rep: usize) -> Option<usize> {
        let idx = *self.orbit_of.get(rep)?;
        (idx != usize::MAX && self.selectable[idx][0] == rep).then_some(idx)
    }

    /// Selectable orbit containing residue `r`, `None` for 0.
    pub fn orbit_containing(&self, r: usize) -> Option<usize> {
        let idx = self.orbit_of[r % self.l];
        (idx != usize::MAX).then_some(idx)
    }

    pub fn size_classes(&self) -> &[SizeClass] {
        &self.size_classes
    }

    pub fn class_of_size(&self, size: usize) -> Option<usize> {
        self.size_classes.iter().position(|c| c.size == size)
    }

    pub fn residue_aware(&self) -> bool {
        self.size_classes
            .first()
            .is_some_and(|c| c.residue_counts.is_some())
    }
}

/// Checks whether `t·I = I + g (mod l)` for some `g`, returning the smallest.
pub fn is_multiplier(l: usize, t: usize, set: &[usize]) -> Result<Option<usize>> {
    if gcd(t % l, l) != 1 {
        return Err(Error::NotUnit { t, modulus: l });
    }
    let mut member = vec![false; l];
    for &i in set {
        member[i % l] = true;
    }
    let scaled: Vec<usize> = set
        .iter()
        .map(|&i| ((t as u128 * i as u128) % l as u128) as usize)
        .collect();
    // `set` may contain duplicates; compare against the deduplicated size.
    let size = member.iter().filter(|&&b| b).count();
    let mut scaled_member = vec![false; l];
    for &x in &scaled {
        scaled_member[x] = true;
    }
    if scaled_member.iter().filter(|&&b| b).count() != size {
        return Ok(None);
    }
    Ok((0..l).find(|&g| scaled.iter().all(|&x| member[(x + l - g) % l])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decomp(l: usize, h: &[usize]) -> OrbitDecomposition {
        OrbitDecomposition::new(&Subgroup::new(l, h.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn h1_on_z117() {
        let d = decomp(117, &[1, 16, 22]);
        assert_eq!(d.selectable()[0], vec![1, 16, 22]);
        let classes = d.size_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!((classes[0].size, classes[0].count()), (1, 2));
        assert_eq!((classes[1].size, classes[1].count()), (3, 38));
        let singles: Vec<usize> = classes[0]
            .orbits
            .iter()
            .map(|&i| d.representative(i))
            .collect();
        assert_eq!(singles, vec![39, 78]);
        assert_eq!(classes[0].residue_counts, Some([2, 0, 0]));
        assert_eq!(classes[1].residue_counts, Some([12, 13, 13]));
    }

    #[test]
    fn h3_on_z117() {
        let d = decomp(117, &[1, 55, 100]);
        let c = d.size_classes();
        assert_eq!((c[0].size, c[0].count()), (1, 8));
        assert_eq!((c[1].size, c[1].count()), (3, 36));
    }

    #[test]
    fn z15_example() {
        let d = decomp(15, &[1, 4]);
        let orbits: Vec<Vec<usize>> = d.orbits().map(<[usize]>::to_vec).collect();
        assert_eq!(
            orbits,
            vec![
                vec![0],
                vec![1, 4],
                vec![2, 8],
                vec![3, 12],
                vec![5],
                vec![6, 9],
                vec![7, 13],
                vec![10],
                vec![11, 14]
            ]
        );
    }

    #[test]
    fn multipliers() {
        assert_eq!(is_multiplier(117, 1, &[3, 5, 8]).unwrap(), Some(0));
        assert_eq!(is_multiplier(117, 16, &[1, 16, 22, 39]).unwrap(), Some(0));
        // {0,1,3} mod 7: 2*{0,1,3} = {0,2,6} = {0,1,3} + 6
        assert_eq!(is_multiplier(7, 2, &[0, 1, 3]).unwrap(), Some(6));
        assert!(is_multiplier(117, 3, &[1]).is_err());
        assert_eq!(is_multiplier(117, 16, &[1, 2]).unwrap(), None);
    }
}
