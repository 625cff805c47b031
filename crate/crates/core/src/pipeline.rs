//! End-to-end runs: search every plan, match all records, verify, report.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Composition, Polarity};
use crate::error::{Error, Result};
use crate::number_theory::{OrbitDecomposition, Subgroup};
use crate::pairs_file::{write_pairs, PairRecord};
use crate::search::{
    all_compositions, allowed_third_psd, match_files, run_parallel, MatchOptions, SearchPlan,
    SearchStats,
};
use crate::verify::symmetry_reduce;

/// Which polarities a sweep covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PolarityChoice {
    Plus,
    Minus,
    Both,
}

impl PolarityChoice {
    pub fn polarities(self) -> Vec<Polarity> {
        match self {
            PolarityChoice::Plus => vec![Polarity::Plus],
            PolarityChoice::Minus => vec![Polarity::Minus],
            PolarityChoice::Both => vec![Polarity::Plus, Polarity::Minus],
        }
    }
}

/// Everything that determines a pipeline run; echoed into `run.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub l: usize,
    pub subgroup: Vec<usize>,
    /// Compositions to search; every admissible one when `None`.
    pub compositions: Option<Vec<Composition>>,
    pub polarity: PolarityChoice,
    /// Rank range, only with a single composition and polarity.
    pub range: Option<(u128, u128)>,
    pub workers: usize,
    /// Use the exact `PSD(l/3)` filter when `3 | l`.
    pub third_filter: bool,
    pub checkpoint_every: u64,
    pub eps: f64,
}

impl RunConfig {
    pub fn new(l: usize, subgroup: Vec<usize>) -> Self {
        Self {
            l,
            subgroup,
            compositions: None,
            polarity: PolarityChoice::Both,
            range: None,
            workers: 1,
            third_filter: true,
            checkpoint_every: 1_000_000,
            eps: crate::DEFAULT_EPS,
        }
    }

    /// Expands the configuration into search plans, in a fixed order.
    pub fn plans(&self) -> Result<Vec<SearchPlan>> {
        let subgroup = Subgroup::new(self.l, self.subgroup.iter().copied())?;
        let decomp = OrbitDecomposition::new(&subgroup)?;
        let mut specs: Vec<(Composition, Polarity)> = Vec::new();
        for pol in self.polarity.polarities() {
            match &self.compositions {
                None => specs.extend(all_compositions(&decomp, pol).into_iter().map(|c| (c, pol))),
                Some(cs) => specs.extend(
                    cs.iter()
                        .filter(|c| c.coverage() == pol.coverage(self.l))
                        .map(|c| (c.clone(), pol)),
                ),
            }
        }
        if specs.is_empty() {
            return Err(Error::Invalid(
                "no composition matches the requested polarity".into(),
            ));
        }
        if self.range.is_some() && specs.len() != 1 {
            return Err(Error::Invalid(
                "a rank range needs exactly one composition and polarity".into(),
            ));
        }
        let third_filter = self.third_filter && self.l % 3 == 0;
        let counts: Vec<Vec<usize>> = specs
            .iter()
            .map(|(c, _)| c.counts_for(&decomp))
            .collect::<Result<_>>()?;
        let mut plans = Vec::with_capacity(specs.len());
        for (i, (comp, pol)) in specs.iter().enumerate() {
            let allowed = if third_filter {
                let mut set = BTreeSet::new();
                for cb in &counts {
                    set.extend(allowed_third_psd(&decomp, &counts[i], cb)?);
                }
                Some(set)
            } else {
                None
            };
            let mut plan =
                SearchPlan::full(&subgroup, comp.clone(), *pol, self.eps)?.with_allowed(allowed);
            if let Some((lo, hi)) = self.range {
                plan = plan.with_range(lo, hi);
            }
            plan.space()?;
            plans.push(plan);
        }
        Ok(plans)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlanSummary {
    pub tag: String,
    pub range: (u128, u128),
    pub allowed_third_psd: Option<BTreeSet<i64>>,
    pub stats: SearchStats,
    pub files: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineSummary {
    pub plans: Vec<PlanSummary>,
    pub records: u64,
    pub hash_matches: usize,
    pub verified: usize,
    pub false_candidates: usize,
    pub pairs: usize,
    pub classes: usize,
}

/// Contents of `run.json`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub summary: PipelineSummary,
}

pub struct PipelineOutput {
    pub summary: PipelineSummary,
    pub pairs: Vec<PairRecord>,
}

impl PipelineOutput {
    /// Verified pairs as sorted unordered `+`/`-` string pairs.
    pub fn pair_strings(&self) -> BTreeSet<(String, String)> {
        self.pairs
            .iter()
            .map(|p| {
                let (a, b) = (
                    p.a.clone().unwrap_or_default(),
                    p.b.clone().unwrap_or_default(),
                );
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }
}

/// Runs search, match and verification into `out`:
/// `records/*.rec` (with plan and checkpoint sidecars), `pairs.json`,
/// `report.txt` and `run.json`. Completed chunks are reused, so a rerun
/// with the same configuration only re-does matching and reporting.
pub fn run_pipeline(config: &RunConfig, out: &Path, progress: bool) -> Result<PipelineOutput> {
    let plans = config.plans().map_err(Error::in_stage("plan"))?;
    let rec_dir = out.join("records");
    let mut summaries = Vec::new();
    let mut files: Vec<PathBuf> = Vec::new();
    for plan in &plans {
        let chunks = run_parallel(
            plan,
            config.workers,
            &rec_dir,
            config.checkpoint_every,
            progress,
        )
        .map_err(Error::in_stage("search"))?;
        let mut stats = SearchStats::default();
        let mut names = Vec::new();
        for c in &chunks {
            stats.add(&c.stats);
            names.push(file_name(&c.paths.rec));
            files.push(c.paths.rec.clone());
        }
        summaries.push(PlanSummary {
            tag: plan.tag(),
            range: plan.range,
            allowed_third_psd: plan.allowed_third_psd.clone(),
            stats,
            files: names,
        });
    }

    let opts = MatchOptions {
        eps: config.eps,
        ..Default::default()
    };
    let (sources, report) = match_files(&files, &opts).map_err(Error::in_stage("match"))?;
    let plans_by_source: Vec<SearchPlan> = sources.into_iter().map(|s| s.plan).collect();
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut results = Vec::new();
    for m in report.verified() {
        let rec = PairRecord::from_match(&plans_by_source, m).map_err(Error::in_stage("verify"))?;
        let key = (rec.a.clone(), rec.b.clone());
        let flipped = (rec.b.clone(), rec.a.clone());
        if seen.contains(&key) || seen.contains(&flipped) {
            continue;
        }
        seen.insert(key);
        results.push(m.pair.clone().expect("verified"));
        pairs.push(rec);
    }
    let symmetry = symmetry_reduce(&results);

    fs::create_dir_all(out).map_err(|e| Error::io(out, e))?;
    write_pairs(&out.join("pairs.json"), &pairs).map_err(Error::in_stage("report"))?;

    let mut text = String::new();
    for s in &summaries {
        let _ = writeln!(
            text,
            "plan {} ranks {}:{} scanned {} stage1 {} stage2 {} evaluations {}",
            s.tag,
            s.range.0,
            s.range.1,
            s.stats.scanned,
            s.stats.stage1_survivors,
            s.stats.stage2_survivors,
            s.stats.stage2_evaluations
        );
    }
    let _ = writeln!(
        text,
        "records {} hash matches {} verified {} false candidates {}",
        report.records,
        report.results.len(),
        report.verified().count(),
        report.false_candidates().count()
    );
    for m in report.false_candidates() {
        let _ = writeln!(
            text,
            "false candidate {}:{} x {}:{}: {}",
            m.source_a,
            m.rank_a,
            m.source_b,
            m.rank_b,
            m.failure.as_deref().unwrap_or("")
        );
    }
    for (i, p) in pairs.iter().enumerate() {
        let _ = writeln!(
            text,
            "pair {} A={} B={} psd_third={:?}",
            i + 1,
            p.a.as_deref().unwrap_or(""),
            p.b.as_deref().unwrap_or(""),
            p.psd_third
        );
    }
    for c in &symmetry.classes {
        let _ = writeln!(text, "class {} {}", c.describe(), c.class_id);
    }
    let report_path = out.join("report.txt");
    fs::write(&report_path, text).map_err(|e| Error::io(&report_path, e))?;

    let summary = PipelineSummary {
        plans: summaries,
        records: report.records,
        hash_matches: report.results.len(),
        verified: report.verified().count(),
        false_candidates: report.false_candidates().count(),
        pairs: pairs.len(),
        classes: symmetry.class_count(),
    };
    let manifest = Manifest {
        config: config.clone(),
        summary: summary.clone(),
    };
    let manifest_path = out.join("run.json");
    fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)? + "\n",
    )
    .map_err(|e| Error::io(&manifest_path, e))?;
    Ok(PipelineOutput { summary, pairs })
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    #[test]
    fn length_nine_matches_oracle() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_pipeline(&RunConfig::new(9, vec![1]), dir.path(), false).unwrap();
        assert_eq!(out.pair_strings(), oracle::legendre_pairs(9, None).unwrap());
        assert_eq!(out.summary.false_candidates, 0);
        assert!(dir.path().join("run.json").exists());
    }

    #[test]
    fn rerun_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let config = RunConfig {
            workers: 2,
            ..RunConfig::new(11, vec![1])
        };
        run_pipeline(&config, &dir.path().join("a"), false).unwrap();
        let manifest = read_manifest(&dir.path().join("a/run.json")).unwrap();
        assert_eq!(manifest.config, config);
        run_pipeline(&manifest.config, &dir.path().join("b"), false).unwrap();
        for f in ["pairs.json", "report.txt", "run.json"] {
            assert_eq!(
                fs::read(dir.path().join("a").join(f)).unwrap(),
                fs::read(dir.path().join("b").join(f)).unwrap(),
                "{f}"
            );
        }
    }

    #[test]
    fn range_needs_single_plan() {
        let config = RunConfig {
            range: Some((0, 1)),
            ..RunConfig::new(9, vec![1])
        };
        assert!(config.plans().is_err());
    }
}
