//! Command-line front end. Every command is a thin wrapper over library
//! calls and writes its human-readable output to the given writer.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::combinatorics::{
    decode_selection, Composition, OrbitSelection, Polarity, SelectionSpace,
};
use crate::error::{Error, Result};
use crate::number_theory::{
    admissible_psd_pairs, format_spectrum_table, orbit_psd_values, spectrum_rows,
    subgroups_of_order, OrbitDecomposition, Subgroup, SubgroupSpec,
};
use crate::oracle;
use crate::pairs_file::{read_pairs, write_pairs, PairRecord};
use crate::pipeline::{read_manifest, run_pipeline, PolarityChoice, RunConfig};
use crate::search::{
    allowed_third_psd, match_files, run_parallel, MatchOptions, SearchPlan, SearchStats,
};
use crate::seq::{psd_exact_third, BinarySequence, RootTable};
use crate::verify::{
    compression_certificate, hadamard_from_pair, symmetry_reduce, verify_pair, CompressionOutcome,
    LegendrePairResult,
};

#[derive(Debug, Parser)]
#[command(
    name = "legendre",
    version,
    about = "Search, decode and verify Legendre pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Admissible [PSD(A,l/3), PSD(B,l/3)] pairs with witness triples
    Spectrum(SpectrumArgs),
    /// Subgroups of a given order of the units mod l
    Subgroups(SubgroupsArgs),
    /// Orbits of a subgroup on Z_l
    Orbits(OrbitsArgs),
    /// PSD(l/3) values reachable by unions of orbits
    Alg2(Alg2Args),
    /// Scan a rank range and write candidate records
    Search(SearchArgs),
    /// Join candidate records on complementary fingerprints
    Match(MatchArgs),
    /// Verify pairs from a pairs file or the command line
    Verify(VerifyArgs),
    /// Turn index sets or ranks into sequences
    Decode(DecodeArgs),
    /// Build Hadamard matrices of order 2l+2 from pairs
    Hadamard(HadamardArgs),
    /// Search, match, verify and report in one go
    Pipeline(PipelineArgs),
    /// Brute-force reference over all normalized sequences
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub l: usize,
    /// Print JSON instead of the table
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SubgroupsArgs {
    pub l: usize,
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct OrbitsArgs {
    #[arg(long)]
    pub l: usize,
    #[arg(long, default_value = "1")]
    pub subgroup: SubgroupSpec,
}

#[derive(Debug, Args)]
pub struct Alg2Args {
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub subgroup: SubgroupSpec,
    /// Orbits chosen for A, e.g. 2x1+19x3
    #[arg(long)]
    pub composition: Composition,
    /// Orbits chosen for B (default: same as A)
    #[arg(long)]
    pub b_composition: Option<Composition>,
}

/// Half-open rank range `LO:HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankRange(pub u128, pub u128);

impl std::str::FromStr for RankRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("range {s:?} is not LO:HI")))?;
        let num = |t: &str| {
            t.trim()
                .replace('_', "")
                .parse::<u128>()
                .map_err(|e| Error::Invalid(format!("range {s:?}: {e}")))
        };
        let (lo, hi) = (num(lo)?, num(hi)?);
        if lo > hi {
            return Err(Error::Invalid(format!("range {s:?} is reversed")));
        }
        Ok(RankRange(lo, hi))
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub subgroup: SubgroupSpec,
    #[arg(long)]
    pub composition: Composition,
    #[arg(long)]
    pub polarity: Polarity,
    /// Rank range LO:HI (default: whole space)
    #[arg(long)]
    pub range: Option<RankRange>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Ranks between checkpoints
    #[arg(long, default_value_t = 1_000_000)]
    pub checkpoint_every: u64,
    /// Skip the exact PSD(l/3) filter
    #[arg(long)]
    pub no_third_filter: bool,
    /// Composition of the partner sequence, for the PSD(l/3) filter
    #[arg(long)]
    pub b_composition: Option<Composition>,
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub l: usize,
    /// Record files; each needs its .plan.json sidecar
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// List every hash match with its verification outcome
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub emit_pairs: Option<PathBuf>,
    /// Entries per sorted run before spilling to disk
    #[arg(long, default_value_t = 1 << 20)]
    pub run_size: usize,
    #[arg(long)]
    pub tmp_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Expected length; checked against every pair
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub pairs: Option<PathBuf>,
    #[arg(short, long, requires = "b")]
    pub a: Option<BinarySequence>,
    #[arg(short, long, requires = "a")]
    pub b: Option<BinarySequence>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Also issue constant-PAF compression certificates for this m
    #[arg(long)]
    pub compression: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub subgroup: SubgroupSpec,
    #[arg(long)]
    pub polarity: Polarity,
    /// Representatives of the chosen orbits
    #[arg(long, value_delimiter = ',', conflicts_with = "rank")]
    pub indices: Option<Vec<usize>>,
    #[arg(long, requires = "composition")]
    pub rank: Option<u128>,
    #[arg(long)]
    pub composition: Option<Composition>,
    /// Also print the PSD at every lag 1..=(l-1)/2
    #[arg(long)]
    pub psd: bool,
}

#[derive(Debug, Args)]
pub struct HadamardArgs {
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub pairs: Option<PathBuf>,
    #[arg(short, long, requires = "b")]
    pub a: Option<BinarySequence>,
    #[arg(short, long, requires = "a")]
    pub b: Option<BinarySequence>,
    /// Directory for the +/- grids (printed to stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Rerun the configuration stored in a run.json
    #[arg(long, conflicts_with_all = ["l", "subgroup", "composition", "range"])]
    pub manifest: Option<PathBuf>,
    #[arg(long, required_unless_present = "manifest")]
    pub l: Option<usize>,
    #[arg(long, default_value = "1")]
    pub subgroup: SubgroupSpec,
    /// Compositions to search (repeatable); all admissible ones by default
    #[arg(long)]
    pub composition: Vec<Composition>,
    #[arg(long, value_enum, default_value = "both")]
    pub polarity: PolarityChoice,
    #[arg(long)]
    pub range: Option<RankRange>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub checkpoint_every: u64,
    #[arg(long)]
    pub no_third_filter: bool,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub l: usize,
    /// Restrict to unions of orbits of this subgroup
    #[arg(long)]
    pub subgroup: Option<SubgroupSpec>,
    /// List PSD survivors instead of pairs
    #[arg(long)]
    pub psd_survivors: bool,
}

fn subgroup(spec: &SubgroupSpec, l: usize) -> Result<Subgroup> {
    spec.build(l)
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Runs one parsed command, writing to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let eps = crate::eps_from_env();
    match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&a, out),
        Command::Subgroups(a) => cmd_subgroups(&a, out),
        Command::Orbits(a) => cmd_orbits(&a, out),
        Command::Alg2(a) => cmd_alg2(&a, out),
        Command::Search(a) => cmd_search(&a, eps, out),
        Command::Match(a) => cmd_match(&a, eps, out),
        Command::Verify(a) => cmd_verify(&a, eps, out),
        Command::Decode(a) => cmd_decode(&a, out),
        Command::Hadamard(a) => cmd_hadamard(&a, eps, out),
        Command::Pipeline(a) => cmd_pipeline(&a, eps, out),
        Command::Oracle(a) => cmd_oracle(&a, eps, out),
    }
}

fn cmd_spectrum(a: &SpectrumArgs, out: &mut dyn Write) -> Result<()> {
    let rows = spectrum_rows(a.l)?;
    if a.json {
        let entries: Vec<_> = rows.iter().filter_map(|r| r.entry()).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&entries)?).map_err(io_err)?;
        return Ok(());
    }
    write!(out, "{}", format_spectrum_table(&rows)).map_err(io_err)?;
    let kept: Vec<String> = rows
        .iter()
        .filter(|r| r.admissible())
        .map(|r| format!("[{}, {}]", r.psd_pair[0], r.psd_pair[1]))
        .collect();
    writeln!(
        out,
        "spectrum ({} pairs): {{ {} }}",
        kept.len(),
        kept.join(", ")
    )
    .map_err(io_err)
}

fn cmd_subgroups(a: &SubgroupsArgs, out: &mut dyn Write) -> Result<()> {
    for h in subgroups_of_order(a.l, a.order) {
        let d = OrbitDecomposition::new(&h)?;
        let classes: Vec<String> = d
            .size_classes()
            .iter()
            .map(|c| format!("{}x{}", c.count(), c.size))
            .collect();
        writeln!(out, "{h}  orbits: {}", classes.join(" + ")).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_orbits(a: &OrbitsArgs, out: &mut dyn Write) -> Result<()> {
    let d = OrbitDecomposition::new(&subgroup(&a.subgroup, a.l)?)?;
    writeln!(out, "subgroup {} of Z_{}", d.subgroup(), a.l).map_err(io_err)?;
    for (i, orbit) in d.selectable().iter().enumerate() {
        let elems: Vec<String> = orbit.iter().map(|e| e.to_string()).collect();
        writeln!(
            out,
            "{:>4}  rep {:>4}  {{{}}}",
            i + 1,
            d.representative(i),
            elems.join(", ")
        )
        .map_err(io_err)?;
    }
    for c in d.size_classes() {
        match c.residue_counts {
            Some([n0, n1, n2]) => writeln!(
                out,
                "size {}: {} orbits (residue 0/1/2 mod 3: {n0}/{n1}/{n2})",
                c.size,
                c.count()
            ),
            None => writeln!(out, "size {}: {} orbits", c.size, c.count()),
        }
        .map_err(io_err)?;
    }
    Ok(())
}

fn cmd_alg2(a: &Alg2Args, out: &mut dyn Write) -> Result<()> {
    let d = OrbitDecomposition::new(&subgroup(&a.subgroup, a.l)?)?;
    let ca = a.composition.counts_for(&d)?;
    let cb = match &a.b_composition {
        Some(c) => c.counts_for(&d)?,
        None => ca.clone(),
    };
    let values = orbit_psd_values(&d, &ca)?;
    let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    writeln!(out, "values ({}): {}", values.len(), list.join(", ")).map_err(io_err)?;
    if a.b_composition.is_some() {
        let vb = orbit_psd_values(&d, &cb)?;
        let list: Vec<String> = vb.iter().map(|v| v.to_string()).collect();
        writeln!(out, "values for B ({}): {}", vb.len(), list.join(", ")).map_err(io_err)?;
    }
    let pairs: Vec<String> = admissible_psd_pairs(&d, &ca, &cb)?
        .iter()
        .map(|e| format!("[{}, {}]", e.psd_pair[0], e.psd_pair[1]))
        .collect();
    writeln!(out, "admissible pairs: {{ {} }}", pairs.join(", ")).map_err(io_err)
}

fn search_plan(a: &SearchArgs, eps: f64) -> Result<SearchPlan> {
    let h = subgroup(&a.subgroup, a.l)?;
    let d = OrbitDecomposition::new(&h)?;
    let mut plan = SearchPlan::full(&h, a.composition.clone(), a.polarity, eps)?;
    if let Some(RankRange(lo, hi)) = a.range {
        plan = plan.with_range(lo, hi);
    }
    if a.l % 3 == 0 && !a.no_third_filter {
        let ca = a.composition.counts_for(&d)?;
        let cb = match &a.b_composition {
            Some(c) => c.counts_for(&d)?,
            None => ca.clone(),
        };
        plan = plan.with_allowed(Some(allowed_third_psd(&d, &ca, &cb)?));
    }
    plan.space()?;
    Ok(plan)
}

fn write_stats(out: &mut dyn Write, label: &str, s: &SearchStats) -> Result<()> {
    writeln!(
        out,
        "{label}: scanned {} stage1 {} stage2 {} evaluations {}",
        s.scanned, s.stage1_survivors, s.stage2_survivors, s.stage2_evaluations
    )
    .map_err(io_err)
}

fn cmd_search(a: &SearchArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let plan = search_plan(a, eps)?;
    if let Some(allowed) = &plan.allowed_third_psd {
        writeln!(out, "allowed PSD(l/3): {allowed:?}").map_err(io_err)?;
    }
    let chunks = run_parallel(&plan, a.workers, &a.out, a.checkpoint_every, a.progress)?;
    let mut total = SearchStats::default();
    for c in &chunks {
        let label = format!(
            "{}{}",
            c.paths.rec.display(),
            if c.reused { " (complete, reused)" } else { "" }
        );
        write_stats(out, &label, &c.stats)?;
        total.add(&c.stats);
    }
    write_stats(out, "total", &total)
}

fn cmd_match(a: &MatchArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let opts = MatchOptions {
        eps,
        run_size: a.run_size,
        temp_dir: a.tmp_dir.clone(),
    };
    let (sources, report) = match_files(&a.files, &opts)?;
    if let Some(s) = sources.iter().find(|s| s.plan.l != a.l) {
        return Err(Error::Invalid(format!(
            "{} holds records for l = {}, not {}",
            s.path.display(),
            s.plan.l,
            a.l
        )));
    }
    writeln!(
        out,
        "records {} hash matches {} verified {} false candidates {}",
        report.records,
        report.results.len(),
        report.verified().count(),
        report.false_candidates().count()
    )
    .map_err(io_err)?;
    let name = |i: usize| {
        sources[i]
            .path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    for m in &report.results {
        if m.verified {
            let p = m.pair.as_ref().expect("verified");
            writeln!(
                out,
                "pair {}:{} {}:{} psd_third {:?}",
                name(m.source_a),
                m.rank_a,
                name(m.source_b),
                m.rank_b,
                p.psd_third
            )
            .map_err(io_err)?;
            if a.verify {
                writeln!(
                    out,
                    "  A {}\n  B {}\n  PAF sums all -2 over {} lags",
                    p.a,
                    p.b,
                    p.paf_sums.len()
                )
                .map_err(io_err)?;
            }
        } else if a.verify {
            writeln!(
                out,
                "false candidate {}:{} {}:{}: {}",
                name(m.source_a),
                m.rank_a,
                name(m.source_b),
                m.rank_b,
                m.failure.as_deref().unwrap_or("")
            )
            .map_err(io_err)?;
        }
    }
    if let Some(path) = &a.emit_pairs {
        let plans: Vec<SearchPlan> = sources.iter().map(|s| s.plan.clone()).collect();
        let recs = report
            .verified()
            .map(|m| PairRecord::from_match(&plans, m))
            .collect::<Result<Vec<_>>>()?;
        write_pairs(path, &recs)?;
        writeln!(out, "wrote {} pairs to {}", recs.len(), path.display()).map_err(io_err)?;
    }
    Ok(())
}

/// Pairs named on the command line or in a pairs file.
fn load_pairs(
    pairs: &Option<PathBuf>,
    a: &Option<BinarySequence>,
    b: &Option<BinarySequence>,
) -> Result<Vec<(String, BinarySequence, BinarySequence)>> {
    match (pairs, a, b) {
        (Some(path), _, _) => read_pairs(path)?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (x, y) = r.sequences()?;
                Ok((format!("#{}", i + 1), x, y))
            })
            .collect(),
        (None, Some(x), Some(y)) => Ok(vec![("#1".into(), x.clone(), y.clone())]),
        _ => Err(Error::Invalid("give --pairs FILE or both -a and -b".into())),
    }
}

fn cmd_verify(a: &VerifyArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let pairs = load_pairs(&a.pairs, &a.a, &a.b)?;
    let mut text = String::new();
    let mut ok = Vec::new();
    let mut failures = 0usize;
    for (label, x, y) in &pairs {
        if let Some(l) = a.l {
            if x.len() != l {
                let _ = writeln!(text, "{label} FAIL length {} differs from {l}", x.len());
                failures += 1;
                continue;
            }
        }
        match verify_pair(x, y, eps) {
            Ok(r) => {
                let _ = writeln!(text, "{label} OK l={} psd_third={:?}", r.l(), r.psd_third);
                if let Some(m) = a.compression {
                    match compression_certificate(x, y, m, eps) {
                        Ok(CompressionOutcome::Certified(c)) => {
                            let _ = writeln!(
                                text,
                                "{label}   compressions {:?} / {:?}, PAF constants {:?}, PSD at lags {:?} = {:?} (max error {:.1e})",
                                c.compressed_a, c.compressed_b, c.paf_constants, c.lags, c.predicted, c.max_error
                            );
                        }
                        Ok(CompressionOutcome::PremiseNotMet { reason, .. }) => {
                            let _ = writeln!(text, "{label}   premise not met: {reason}");
                        }
                        Err(e) => {
                            let _ = writeln!(text, "{label}   certificate failed: {e}");
                            failures += 1;
                        }
                    }
                }
                ok.push(r);
            }
            Err(f) => {
                let _ = writeln!(text, "{label} FAIL {f}");
                failures += 1;
            }
        }
    }
    for c in symmetry_reduce(&ok).classes {
        let _ = writeln!(text, "class {} {}", c.describe(), c.class_id);
    }
    let _ = writeln!(text, "{} of {} pairs verified", ok.len(), pairs.len());
    out.write_all(text.as_bytes()).map_err(io_err)?;
    if let Some(path) = &a.report {
        std::fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    if failures > 0 {
        return Err(Error::Verification(format!(
            "{failures} of {} checks failed",
            pairs.len()
        )));
    }
    Ok(())
}

fn cmd_decode(a: &DecodeArgs, out: &mut dyn Write) -> Result<()> {
    let d = OrbitDecomposition::new(&subgroup(&a.subgroup, a.l)?)?;
    let (seq, sel) = match (&a.indices, a.rank, &a.composition) {
        (Some(idx), _, _) => {
            let sel = OrbitSelection::from_representatives(&d, idx, a.polarity)?;
            (decode_selection(&d, &sel)?, sel)
        }
        (None, Some(r), Some(c)) => {
            let space = SelectionSpace::new(&d, c, a.polarity)?;
            let sel = space.rank_to_selection(r)?;
            (decode_selection(&d, &sel)?, sel)
        }
        _ => {
            return Err(Error::Invalid(
                "give --indices or --rank with --composition".into(),
            ))
        }
    };
    let reps: Vec<String> = sel
        .representatives(&d)
        .iter()
        .map(|r| r.to_string())
        .collect();
    writeln!(out, "I = {{{}}}", reps.join(", ")).map_err(io_err)?;
    if let Some(c) = &a.composition {
        if let Ok(space) = SelectionSpace::new(&d, c, a.polarity) {
            if let Ok(r) = space.selection_rank(&sel) {
                writeln!(out, "rank {r}").map_err(io_err)?;
            }
        }
    }
    writeln!(out, "{seq}").map_err(io_err)?;
    if a.l % 3 == 0 {
        writeln!(out, "PSD(l/3) = {}", psd_exact_third(seq.entries())?).map_err(io_err)?;
    }
    if a.psd {
        let t = RootTable::new(a.l);
        for s in 1..=(a.l - 1) / 2 {
            writeln!(out, "PSD({s}) = {:.6}", t.psd(seq.entries(), s)?).map_err(io_err)?;
        }
    }
    Ok(())
}

fn cmd_hadamard(a: &HadamardArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let pairs = load_pairs(&a.pairs, &a.a, &a.b)?;
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    for (i, (label, x, y)) in pairs.iter().enumerate() {
        let pair: LegendrePairResult = verify_pair(x, y, eps)?;
        let h = hadamard_from_pair(&pair)?;
        match &a.out {
            Some(dir) => {
                let path = dir.join(format!("hadamard-{:03}-order-{}.txt", i + 1, h.order()));
                std::fs::write(&path, h.to_text()).map_err(|e| Error::io(&path, e))?;
                writeln!(
                    out,
                    "{label} order {} corner {:?} -> {}",
                    h.order(),
                    h.variant(),
                    path.display()
                )
                .map_err(io_err)?;
            }
            None => {
                writeln!(out, "{label} order {} corner {:?}", h.order(), h.variant())
                    .map_err(io_err)?;
                write!(out, "{}", h.to_text()).map_err(io_err)?;
            }
        }
    }
    Ok(())
}

fn cmd_pipeline(a: &PipelineArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let config = match &a.manifest {
        Some(path) => read_manifest(path)?.config,
        None => {
            let l = a.l.expect("required by clap");
            RunConfig {
                l,
                subgroup: subgroup(&a.subgroup, l)?.elements().to_vec(),
                compositions: (!a.composition.is_empty()).then(|| a.composition.clone()),
                polarity: a.polarity,
                range: a.range.map(|RankRange(lo, hi)| (lo, hi)),
                workers: a.workers,
                third_filter: !a.no_third_filter,
                checkpoint_every: a.checkpoint_every,
                eps,
            }
        }
    };
    let result = run_pipeline(&config, &a.out, a.progress)?;
    let s = &result.summary;
    for p in &s.plans {
        write_stats(
            out,
            &format!("{} {}:{}", p.tag, p.range.0, p.range.1),
            &p.stats,
        )?;
    }
    writeln!(
        out,
        "records {} hash matches {} verified {} false candidates {} pairs {} classes {}",
        s.records, s.hash_matches, s.verified, s.false_candidates, s.pairs, s.classes
    )
    .map_err(io_err)?;
    writeln!(out, "outputs in {}", a.out.display()).map_err(io_err)
}

fn cmd_oracle(a: &OracleArgs, eps: f64, out: &mut dyn Write) -> Result<()> {
    let h = a.subgroup.as_ref().map(|s| subgroup(s, a.l)).transpose()?;
    let elems = h.as_ref().map(|h| h.elements());
    if a.psd_survivors {
        let set = oracle::psd_survivors(a.l, elems, eps)?;
        for s in &set {
            writeln!(out, "{s}").map_err(io_err)?;
        }
        return writeln!(out, "{} PSD survivors", set.len()).map_err(io_err);
    }
    let pairs = oracle::legendre_pairs(a.l, elems)?;
    for (x, y) in &pairs {
        writeln!(out, "{x} {y}").map_err(io_err)?;
    }
    writeln!(out, "{} pairs", pairs.len()).map_err(io_err)
}

/// Parses `args` (program name first) and runs the command into a string.
pub fn run_to_string<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut buf = Vec::new();
    run(cli, &mut buf)?;
    Ok(String::from_utf8(buf).expect("utf-8 output"))
}

/// Path of the `run.json` written by a pipeline run into `dir`.
pub fn manifest_path(dir: &Path) -> PathBuf {
    dir.join("run.json")
}
