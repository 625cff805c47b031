//! Admissible values of `[PSD(A, l/3), PSD(B, l/3)]` for Legendre pairs
//! with `3 | l`, and their refinement by orbit structure.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::orbits::OrbitDecomposition;
use super::squares::{signed_assignments, three_squares_all_odd};
use crate::error::{Error, Result};
use crate::seq::third_form;

/// One admissible `[A_m, B_m]` pair with the residue-sum triples realising it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub psd_pair: [i64; 2],
    pub witnesses_a: Vec<[i64; 3]>,
    pub witnesses_b: Vec<[i64; 3]>,
}

impl SpectrumEntry {
    pub fn contains_value(&self, v: i64) -> bool {
        self.psd_pair.contains(&v)
    }

    /// Whether `[a, b]` matches this entry in either order.
    pub fn matches(&self, a: i64, b: i64) -> bool {
        let [x, y] = self.psd_pair;
        (a, b) == (x, y) || (a, b) == (y, x)
    }
}

/// One candidate row of the spectrum computation, kept or discarded.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub psd_pair: [i64; 2],
    pub square_sums: [i64; 2],
    pub triples_a: Vec<[u64; 3]>,
    pub triples_b: Vec<[u64; 3]>,
    pub witnesses_a: Vec<[i64; 3]>,
    pub witnesses_b: Vec<[i64; 3]>,
}

impl SpectrumRow {
    pub fn admissible(&self) -> bool {
        !self.witnesses_a.is_empty() && !self.witnesses_b.is_empty()
    }

    pub fn entry(&self) -> Option<SpectrumEntry> {
        self.admissible().then(|| SpectrumEntry {
            psd_pair: self.psd_pair,
            witnesses_a: self.witnesses_a.clone(),
            witnesses_b: self.witnesses_b.clone(),
        })
    }
}

fn check_length(l: usize) -> Result<()> {
    if l % 2 == 0 || l % 3 != 0 {
        return Err(Error::Invalid(format!(
            "length {l} must be odd and divisible by 3"
        )));
    }
    Ok(())
}

fn side(psd: i64) -> (i64, Vec<[u64; 3]>, Vec<[i64; 3]>) {
    if (2 * psd + 1) % 3 != 0 || psd < 0 {
        return (0, Vec::new(), Vec::new());
    }
    let target = (2 * psd + 1) / 3;
    let triples = three_squares_all_odd(target as u64);
    let witnesses = triples
        .iter()
        .flat_map(|&t| signed_assignments(t, 1))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    (target, triples, witnesses)
}

/// Every candidate pair `[12s+4, 2l+2-(12s+4)]` with `12s+4 <= l+1`.
///
/// The loop over `s = 0..=(l-1)/6` also produces each pair in swapped
/// order; those are the same unordered candidate and are skipped.
pub fn spectrum_rows(l: usize) -> Result<Vec<SpectrumRow>> {
    check_length(l)?;
    let total = 2 * l as i64 + 2;
    let mut rows = Vec::new();
    for s in 0..=((l - 1) / 6) as i64 {
        let a = 12 * s + 4;
        let b = total - a;
        if a > b {
            continue;
        }
        let (sa, triples_a, witnesses_a) = side(a);
        let (sb, triples_b, witnesses_b) = side(b);
        rows.push(SpectrumRow {
            psd_pair: [a, b],
            square_sums: [sa, sb],
            triples_a,
            triples_b,
            witnesses_a,
            witnesses_b,
        });
    }
    Ok(rows)
}

/// Spectrum of `[PSD(A, l/3), PSD(B, l/3)]`, canonicalised with the
/// smaller value first and sorted ascending.
pub fn spectrum_mod3(l: usize) -> Result<Vec<SpectrumEntry>> {
    Ok(spectrum_rows(l)?
        .iter()
        .filter_map(SpectrumRow::entry)
        .collect())
}

/// PSD values at lag `l/3` compatible with choosing `counts[i]` orbits
/// from size class `i` of `decomp`.
///
/// The per-class choices `(k_{i,1}, k_{i,2}, k_{i,0})` are independent, so
/// the attainable residue-class totals are the sumset over classes.
pub fn orbit_psd_values(decomp: &OrbitDecomposition, counts: &[usize]) -> Result<BTreeSet<i64>> {
    let l = decomp.l();
    check_length(l)?;
    let classes = decomp.size_classes();
    if counts.len() != classes.len() {
        return Err(Error::Invalid(format!(
            "expected {} orbit counts, got {}",
            classes.len(),
            counts.len()
        )));
    }
    if !decomp.residue_aware() {
        return Err(Error::Invalid(format!(
            "subgroup {} has elements not congruent to 1 mod 3",
            decomp.subgroup()
        )));
    }
    let m = (l / 3) as i64;
    let mut totals: HashSet<(i64, i64)> = HashSet::from([(0, 0)]);
    let mut chosen = 0i64;
    for (class, &c) in classes.iter().zip(counts) {
        if c > class.count() {
            return Err(Error::Invalid(format!(
                "cannot choose {c} of {} orbits of size {}",
                class.count(),
                class.size
            )));
        }
        let [n0, n1, n2] = class.residue_counts.expect("residue aware");
        let s = class.size as i64;
        let mut options = Vec::new();
        for k1 in 0..=c.min(n1) {
            for k2 in 0..=c.min(n2) {
                if k1 + k2 <= c && c - k1 - k2 <= n0 {
                    options.push((s * k1 as i64, s * k2 as i64));
                }
            }
        }
        totals = totals
            .iter()
            .flat_map(|&(t1, t2)| options.iter().map(move |&(o1, o2)| (t1 + o1, t2 + o2)))
            .collect();
        chosen += s * c as i64;
    }
    Ok(totals
        .into_iter()
        .map(|(s1, s2)| {
            let s0 = chosen - s1 - s2;
            third_form([-m + 2 * s1, -m + 2 * s2, -m + 2 * s0])
        })
        .collect())
}

/// Spectrum entries realisable with `A` built from `counts_a` orbits and
/// `B` from `counts_b` orbits, in either order.
pub fn admissible_psd_pairs(
    decomp: &OrbitDecomposition,
    counts_a: &[usize],
    counts_b: &[usize],
) -> Result<Vec<SpectrumEntry>> {
    let spectrum = spectrum_mod3(decomp.l())?;
    let ca = orbit_psd_values(decomp, counts_a)?;
    let cb = if counts_a == counts_b {
        ca.clone()
    } else {
        orbit_psd_values(decomp, counts_b)?
    };
    Ok(spectrum
        .into_iter()
        .filter(|e| {
            let [x, y] = e.psd_pair;
            (ca.contains(&x) && cb.contains(&y)) || (ca.contains(&y) && cb.contains(&x))
        })
        .collect())
}

/// Text table of the spectrum computation, one block per candidate pair.
pub fn format_spectrum_table(rows: &[SpectrumRow]) -> String {
    fn triples(ts: &[[u64; 3]]) -> String {
        if ts.is_empty() {
            return "no all-odd solutions".into();
        }
        ts.iter()
            .map(|t| format!("[{}, {}, {}]", t[0], t[1], t[2]))
            .collect::<Vec<_>>()
            .join(", ")
    }
    fn assignments(ws: &[[i64; 3]]) -> String {
        ws.iter()
            .map(|w| format!("({}, {}, {})", w[0], w[1], w[2]))
            .collect::<Vec<_>>()
            .join(" ")
    }
    let mut out = String::new();
    for row in rows {
        let [a, b] = row.psd_pair;
        let head = format!("({a},{b})");
        let pad = " ".repeat(head.len());
        let _ = writeln!(
            out,
            "{head}  A1^2+A2^2+A3^2 = {}  ~> {}",
            row.square_sums[0],
            triples(&row.triples_a)
        );
        let _ = writeln!(
            out,
            "{pad}  B1^2+B2^2+B3^2 = {}  ~> {}",
            row.square_sums[1],
            triples(&row.triples_b)
        );
        if row.admissible() {
            let _ = writeln!(out, "{pad}  compatible assignments:");
            let _ = writeln!(
                out,
                "{pad}    (A1,A2,A3) in {}",
                assignments(&row.witnesses_a)
            );
            let _ = writeln!(
                out,
                "{pad}    (B1,B2,B3) in {}",
                assignments(&row.witnesses_b)
            );
        } else {
            let _ = writeln!(out, "{pad}  no compatible assignments");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_theory::Subgroup;

    fn pairs(entries: &[SpectrumEntry]) -> Vec<[i64; 2]> {
        entries.iter().map(|e| e.psd_pair).collect()
    }

    #[test]
    fn spectrum_117() {
        assert_eq!(
            pairs(&spectrum_mod3(117).unwrap()),
            vec![[28, 208], [64, 172], [112, 124]]
        );
    }

    #[test]
    fn spectrum_small() {
        assert_eq!(pairs(&spectrum_mod3(3).unwrap()), vec![[4, 4]]);
        assert_eq!(pairs(&spectrum_mod3(9).unwrap()), vec![[4, 16]]);
        assert!(spectrum_mod3(10).is_err());
        assert!(spectrum_mod3(7).is_err());
    }

    #[test]
    fn discarded_row_has_no_assignments() {
        let rows = spectrum_rows(117).unwrap();
        let first = &rows[0];
        assert_eq!(first.psd_pair, [4, 232]);
        assert_eq!(first.square_sums, [3, 155]);
        assert!(!first.admissible());
        let table = format_spectrum_table(&rows);
        assert!(table.contains("no compatible assignments"));
    }

    #[test]
    fn alg2_rejects_bad_inputs() {
        let d = OrbitDecomposition::new(&Subgroup::new(117, [1, 16, 22]).unwrap()).unwrap();
        assert!(orbit_psd_values(&d, &[2]).is_err());
        assert!(orbit_psd_values(&d, &[3, 19]).is_err());
        // 8 ≡ 2 (mod 3)
        let h = Subgroup::new(15, [1, 4]).unwrap();
        assert!(orbit_psd_values(&OrbitDecomposition::new(&h).unwrap(), &[1, 3]).is_ok());
        let bad = Subgroup::new(9, [1, 8]).unwrap();
        let dbad = OrbitDecomposition::new(&bad).unwrap();
        assert!(orbit_psd_values(&dbad, &vec![0; dbad.size_classes().len()]).is_err());
    }
}
