use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::plan::SearchPlan;
use crate::combinatorics::SelectionSpace;
use crate::error::{Error, Result};
use crate::seq::{third_form, BinarySequence, RootTable};

/// Lags hashed into fingerprints: `1..=(l-1)/2` without `l/3`, except
/// for `l = 3` where `l/3` is the only lag.
pub fn fingerprint_lags(l: usize) -> Vec<usize> {
    (1..=(l - 1) / 2)
        .filter(|&k| !(l % 3 == 0 && l > 3 && k == l / 3))
        .collect()
}

fn hex_digit(v: f64) -> char {
    let d = (v.round() as i64).rem_euclid(16) as u32;
    char::from_digit(d, 16).expect("digit below 16")
}

fn fingerprint_with(table: &RootTable, lags: &[usize], a: &[i8]) -> (String, String) {
    let l = a.len();
    let total = (2 * l + 2) as f64;
    let mut fp1 = String::with_capacity(lags.len());
    let mut fp2 = String::with_capacity(lags.len());
    for &k in lags {
        let p = table.psd_unchecked(a, k);
        fp1.push(hex_digit(p));
        fp2.push(hex_digit(total - p));
    }
    (fp1, fp2)
}

/// PSD values mod 16 (`fp1`) and their complements `2l+2-PSD` mod 16 (`fp2`),
/// one hex digit per lag of [`fingerprint_lags`].
pub fn fingerprint(a: &BinarySequence) -> (String, String) {
    let l = a.len();
    fingerprint_with(&RootTable::new(l), &fingerprint_lags(l), a.entries())
}

/// One sequence that passed both filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord {
    pub rank: u128,
    pub fp1: String,
    pub fp2: String,
}

impl fmt::Display for CandidateRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.rank, self.fp1, self.fp2)
    }
}

impl FromStr for CandidateRecord {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut it = s.split_ascii_whitespace();
        let (Some(rank), Some(fp1), Some(fp2), None) = (it.next(), it.next(), it.next(), it.next())
        else {
            return Err("expected `<rank> <fp1> <fp2>`".into());
        };
        let rank = rank
            .parse()
            .map_err(|e| format!("bad rank {rank:?}: {e}"))?;
        let is_hex = |t: &str| t.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'));
        if !is_hex(fp1) || !is_hex(fp2) {
            return Err("fingerprints must be lowercase hex".into());
        }
        if fp1.len() != fp2.len() {
            return Err("fingerprints differ in length".into());
        }
        Ok(Self {
            rank,
            fp1: fp1.into(),
            fp2: fp2.into(),
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub scanned: u64,
    pub stage1_survivors: u64,
    pub stage2_survivors: u64,
    /// PSD evaluations spent in the second stage.
    pub stage2_evaluations: u64,
}

impl SearchStats {
    pub fn add(&mut self, o: &SearchStats) {
        self.scanned += o.scanned;
        self.stage1_survivors += o.stage1_survivors;
        self.stage2_survivors += o.stage2_survivors;
        self.stage2_evaluations += o.stage2_evaluations;
    }
}

/// Smallest representatives of the classes of `1..l` under `s -> h s` for
/// `h` in `<H, -1>`. The PSD of a union of `H`-orbits is constant on each
/// class.
pub fn lag_class_representatives(l: usize, subgroup: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; l];
    let mut reps = Vec::new();
    for s in 1..l {
        if seen[s] {
            continue;
        }
        reps.push(s);
        for &h in subgroup {
            let t = h * s % l;
            seen[t] = true;
            seen[l - t] = true;
        }
    }
    reps
}

/// Precomputed state for scanning one plan.
pub struct Searcher {
    plan: SearchPlan,
    space: SelectionSpace,
    table: RootTable,
    stage2_lags: Vec<usize>,
    fp_lags: Vec<usize>,
    allowed: Option<BTreeSet<i64>>,
    /// Per selectable orbit: element counts with residue 1, 2, 0 mod 3.
    orbit_mod3: Vec<[i64; 3]>,
}

impl Searcher {
    pub fn new(plan: &SearchPlan) -> Result<Self> {
        let space = plan.space()?;
        let l = plan.l;
        let decomp = space.decomposition();
        let mut stage2_lags = lag_class_representatives(l, decomp.subgroup().elements());
        if plan.allowed_third_psd.is_some() {
            // {l/3, 2l/3} is a class of its own, settled by the first stage
            stage2_lags.retain(|&s| s != l / 3);
        }
        let orbit_mod3 = decomp
            .selectable()
            .iter()
            .map(|orbit| {
                let mut c = [0i64; 3];
                for &r in orbit {
                    c[[2, 0, 1][r % 3]] += 1;
                }
                c
            })
            .collect();
        Ok(Self {
            table: RootTable::new(l),
            fp_lags: fingerprint_lags(l),
            allowed: plan.allowed_third_psd.clone(),
            plan: plan.clone(),
            space,
            stage2_lags,
            orbit_mod3,
        })
    }

    pub fn plan(&self) -> &SearchPlan {
        &self.plan
    }

    pub fn space(&self) -> &SelectionSpace {
        &self.space
    }

    /// Lags tested in the second stage, ascending.
    pub fn stage2_lags(&self) -> &[usize] {
        &self.stage2_lags
    }

    /// Scans `[lo, hi)`, a subrange of the plan's range. `progress` is
    /// called after every rank with the rank just finished; returning an
    /// error aborts the scan.
    pub fn scan<S, P>(
        &self,
        lo: u128,
        hi: u128,
        stats: &mut SearchStats,
        mut sink: S,
        mut progress: P,
    ) -> Result<()>
    where
        S: FnMut(CandidateRecord) -> Result<()>,
        P: FnMut(u128, &SearchStats) -> Result<()>,
    {
        if lo >= hi {
            return Ok(());
        }
        let l = self.plan.l;
        let bound = self.plan.psd_bound();
        let mark = self.plan.polarity.value();
        let third_total = (l / 3) as i64;
        let selectable = self.space.decomposition().selectable();
        let mut buf = vec![-mark; l];
        let mut cursor = self.space.cursor(lo)?;
        loop {
            let rank = cursor.rank();
            stats.scanned += 1;
            let pass1 = match &self.allowed {
                None => true,
                Some(allowed) => {
                    let mut chosen = [0i64; 3];
                    for o in cursor.chosen_orbits() {
                        let c = &self.orbit_mod3[o];
                        chosen[0] += c[0];
                        chosen[1] += c[1];
                        chosen[2] += c[2];
                    }
                    let m = i64::from(mark);
                    let sums = chosen.map(|c| m * (2 * c - third_total));
                    allowed.contains(&third_form(sums))
                }
            };
            if pass1 {
                stats.stage1_survivors += 1;
                buf.fill(-mark);
                for o in cursor.chosen_orbits() {
                    for &r in &selectable[o] {
                        buf[(r + l - 1) % l] = mark;
                    }
                }
                let mut ok = true;
                for &s in &self.stage2_lags {
                    stats.stage2_evaluations += 1;
                    if self.table.psd_unchecked(&buf, s) > bound {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    stats.stage2_survivors += 1;
                    let (fp1, fp2) = fingerprint_with(&self.table, &self.fp_lags, &buf);
                    sink(CandidateRecord { rank, fp1, fp2 })?;
                }
            }
            progress(rank, stats)?;
            if rank + 1 >= hi || !cursor.advance() {
                return Ok(());
            }
        }
    }
}

/// Runs a plan over its whole range, passing survivors to `sink`.
pub fn run_search<S>(plan: &SearchPlan, sink: S) -> Result<SearchStats>
where
    S: FnMut(CandidateRecord) -> Result<()>,
{
    let searcher = Searcher::new(plan)?;
    let mut stats = SearchStats::default();
    let (lo, hi) = plan.range;
    searcher.scan(lo, hi, &mut stats, sink, |_, _| Ok(()))?;
    Ok(stats)
}

/// Parses one record line, attributing errors to `path:line`.
pub fn parse_record(line: &str, path: &std::path::Path, lineno: usize) -> Result<CandidateRecord> {
    line.parse().map_err(|msg| Error::Parse {
        path: path.to_path_buf(),
        line: lineno,
        msg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Polarity;
    use crate::number_theory::Subgroup;
    use crate::published;

    #[test]
    fn fingerprint_of_length_three() {
        let a: BinarySequence = "++-".parse().unwrap();
        assert_eq!(fingerprint(&a), ("4".into(), "4".into()));
        assert_eq!(fingerprint_lags(117).len(), 57);
    }

    #[test]
    fn published_pairs_have_complementary_fingerprints() {
        for p in published::all() {
            let (a, b) = p.sequences().unwrap();
            let (fa, fb) = (fingerprint(&a), fingerprint(&b));
            assert_eq!(fa.0, fb.1, "{} {}", p.family.name, p.label);
            assert_eq!(fa.1, fb.0, "{} {}", p.family.name, p.label);
        }
    }

    #[test]
    fn record_lines() {
        let r: CandidateRecord = "42 0af 1b2".parse().unwrap();
        assert_eq!(r.to_string(), "42 0af 1b2");
        assert!("42 0AF 1b2".parse::<CandidateRecord>().is_err());
        assert!("42 0af 1b".parse::<CandidateRecord>().is_err());
        assert!("x 0af 1b2".parse::<CandidateRecord>().is_err());
        assert!("42 0af".parse::<CandidateRecord>().is_err());
    }

    #[test]
    fn lag_classes() {
        assert_eq!(lag_class_representatives(7, &[1]), vec![1, 2, 3]);
        // l = 117 under <H1, -1>: every class has a representative <= 58
        let reps = lag_class_representatives(117, &[1, 16, 22]);
        assert!(reps.iter().all(|&s| s <= 58));
        assert!(reps.contains(&39));
    }

    #[test]
    fn empty_allowed_set_stops_everything() {
        let h = Subgroup::new(117, [1, 16, 22]).unwrap();
        let plan = SearchPlan::full(&h, "2x1+19x3".parse().unwrap(), Polarity::Plus, 1e-6)
            .unwrap()
            .with_range(0, 2000)
            .with_allowed(Some(BTreeSet::new()));
        let stats = run_search(&plan, |_| panic!("no survivors expected")).unwrap();
        assert_eq!(stats.scanned, 2000);
        assert_eq!(stats.stage1_survivors, 0);
        assert_eq!(stats.stage2_evaluations, 0);
    }

    #[test]
    fn published_ranks_survive() {
        let fam = &published::L117_H1;
        let (ra, rb) = published::L117_H1_RANKS[0];
        let d = fam.decomposition();
        let counts = fam.composition().counts_for(&d).unwrap();
        let allowed = super::super::allowed_third_psd(&d, &counts, &counts).unwrap();
        for r in [ra, rb] {
            let plan = SearchPlan::full(&fam.subgroup(), fam.composition(), fam.polarity, 1e-6)
                .unwrap()
                .with_range(r, r + 1)
                .with_allowed(Some(allowed.clone()));
            let mut out = Vec::new();
            run_search(&plan, |rec| {
                out.push(rec);
                Ok(())
            })
            .unwrap();
            assert_eq!(out.len(), 1);
            let a = fam.space().unwrap().rank_to_sequence(r).unwrap();
            let (fp1, fp2) = fingerprint(&a);
            assert_eq!((&out[0].fp1, &out[0].fp2), (&fp1, &fp2));
        }
    }
}
