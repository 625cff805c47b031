use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Composition, Polarity, SelectionSpace};
use crate::error::{Error, Result};
use crate::number_theory::{orbit_psd_values, spectrum_mod3, OrbitDecomposition, Subgroup};

/// One search task: a slice of the ranks of a selection space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchPlan {
    pub l: usize,
    pub subgroup: Vec<usize>,
    pub composition: Composition,
    pub polarity: Polarity,
    /// Exact values allowed for `PSD(A, l/3)`; `None` disables the first stage.
    pub allowed_third_psd: Option<BTreeSet<i64>>,
    /// Half-open rank range `[lo, hi)`.
    pub range: (u128, u128),
    pub eps: f64,
}

impl SearchPlan {
    /// Plan covering the whole space, without a first-stage filter.
    pub fn full(
        subgroup: &Subgroup,
        composition: Composition,
        polarity: Polarity,
        eps: f64,
    ) -> Result<Self> {
        let decomp = OrbitDecomposition::new(subgroup)?;
        let space = SelectionSpace::new(&decomp, &composition, polarity)?;
        Ok(Self {
            l: subgroup.modulus(),
            subgroup: subgroup.elements().to_vec(),
            composition,
            polarity,
            allowed_third_psd: None,
            range: (0, space.size()),
            eps,
        })
    }

    pub fn with_range(mut self, lo: u128, hi: u128) -> Self {
        self.range = (lo, hi);
        self
    }

    pub fn with_allowed(mut self, allowed: Option<BTreeSet<i64>>) -> Self {
        self.allowed_third_psd = allowed;
        self
    }

    pub fn psd_bound(&self) -> f64 {
        (2 * self.l + 2) as f64 + self.eps
    }

    pub fn subgroup(&self) -> Result<Subgroup> {
        Subgroup::new(self.l, self.subgroup.iter().copied())
    }

    /// Checks the plan and builds its selection space.
    pub fn space(&self) -> Result<SelectionSpace> {
        if self.l < 3 || self.l % 2 == 0 {
            return Err(Error::Invalid(format!(
                "length {} must be odd and at least 3",
                self.l
            )));
        }
        let decomp = OrbitDecomposition::new(&self.subgroup()?)?;
        let space = SelectionSpace::new(&decomp, &self.composition, self.polarity)?;
        let (lo, hi) = self.range;
        if lo > hi || hi > space.size() {
            return Err(Error::Invalid(format!(
                "rank range {lo}:{hi} outside space of size {}",
                space.size()
            )));
        }
        if self.allowed_third_psd.is_some() && self.l % 3 != 0 {
            return Err(Error::Invalid(format!(
                "a PSD(l/3) filter needs 3 | l, got l = {}",
                self.l
            )));
        }
        if !(self.eps.is_finite() && self.eps >= 0.0) {
            return Err(Error::Invalid(format!("bad tolerance {}", self.eps)));
        }
        Ok(space)
    }

    /// Short tag used in file names.
    pub fn tag(&self) -> String {
        format!("l{}-{}-{}", self.l, self.composition, self.polarity)
    }
}

/// Values of `PSD(A, l/3)` that can occur in a pair with `A` drawn from
/// `counts_a` and `B` from `counts_b`.
///
/// When the subgroup is not congruent to 1 mod 3 the orbit counts say
/// nothing about residue sums, and every spectrum value is allowed.
pub fn allowed_third_psd(
    decomp: &OrbitDecomposition,
    counts_a: &[usize],
    counts_b: &[usize],
) -> Result<BTreeSet<i64>> {
    let spectrum = spectrum_mod3(decomp.l())?;
    if !decomp.residue_aware() {
        return Ok(spectrum.iter().flat_map(|e| e.psd_pair).collect());
    }
    let va = orbit_psd_values(decomp, counts_a)?;
    let vb = orbit_psd_values(decomp, counts_b)?;
    let mut out = BTreeSet::new();
    for e in &spectrum {
        let [x, y] = e.psd_pair;
        if va.contains(&x) && vb.contains(&y) {
            out.insert(x);
        }
        if va.contains(&y) && vb.contains(&x) {
            out.insert(y);
        }
    }
    Ok(out)
}

/// Every composition of the selectable orbits with the coverage required
/// by `polarity`, in lexicographic order of per-class counts.
pub fn all_compositions(decomp: &OrbitDecomposition, polarity: Polarity) -> Vec<Composition> {
    let classes = decomp.size_classes();
    let target = polarity.coverage(decomp.l());
    let mut out = Vec::new();
    let mut counts = vec![0usize; classes.len()];
    fn rec(
        i: usize,
        left: usize,
        classes: &[crate::number_theory::SizeClass],
        counts: &mut Vec<usize>,
        decomp: &OrbitDecomposition,
        out: &mut Vec<Composition>,
    ) {
        if i == classes.len() {
            if left == 0 {
                out.push(Composition::from_counts(decomp, counts));
            }
            return;
        }
        let size = classes[i].size;
        for k in 0..=classes[i].count().min(left / size) {
            counts[i] = k;
            rec(i + 1, left - k * size, classes, counts, decomp, out);
        }
        counts[i] = 0;
    }
    rec(0, target, classes, &mut counts, decomp, &mut out);
    out
}

/// Splits `[0, size)` into at most `chunks` contiguous ranges whose sizes
/// differ by at most one; empty ranges are dropped.
pub fn split_ranges(size: u128, chunks: usize) -> Vec<(u128, u128)> {
    let chunks = chunks.max(1) as u128;
    let (q, r) = (size / chunks, size % chunks);
    let mut out = Vec::new();
    let mut lo = 0u128;
    for i in 0..chunks {
        let len = q + u128::from(i < r);
        if len > 0 {
            out.push((lo, lo + len));
        }
        lo += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_theory::SubgroupSpec;

    fn decomp(l: usize, h: &str) -> OrbitDecomposition {
        OrbitDecomposition::new(&h.parse::<SubgroupSpec>().unwrap().build(l).unwrap()).unwrap()
    }

    #[test]
    fn splits() {
        assert_eq!(split_ranges(10, 3), vec![(0, 4), (4, 7), (7, 10)]);
        assert_eq!(split_ranges(5, 8).len(), 5);
        let r = split_ranges(35_345_263_800, 16);
        assert_eq!(r.len(), 16);
        assert_eq!(r[15].1, 35_345_263_800);
        assert!(r.windows(2).all(|w| w[0].1 == w[1].0));
        assert!(split_ranges(0, 4).is_empty());
    }

    #[test]
    fn allowed_values_l117() {
        let d = decomp(117, "1,16,22");
        let c = "2x1+19x3"
            .parse::<Composition>()
            .unwrap()
            .counts_for(&d)
            .unwrap();
        let allowed = allowed_third_psd(&d, &c, &c).unwrap();
        assert_eq!(allowed, BTreeSet::from([28, 64, 172, 208]));
    }

    #[test]
    fn compositions_l15() {
        let d = decomp(15, "1,4");
        let plus: Vec<String> = all_compositions(&d, Polarity::Plus)
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(plus, ["4x2", "2x1+3x2"]);
        assert_eq!(all_compositions(&d, Polarity::Minus).len(), 1);
    }

    #[test]
    fn plan_validation() {
        let h = Subgroup::trivial(7);
        let plan = SearchPlan::full(&h, "4x1".parse().unwrap(), Polarity::Plus, 1e-6).unwrap();
        assert_eq!(plan.range, (0, 15));
        assert!(plan.clone().with_range(0, 16).space().is_err());
        assert!(plan.with_allowed(Some(BTreeSet::new())).space().is_err());
    }
}
