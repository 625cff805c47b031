//! Complementary-fingerprint join of candidate records.
//!
//! A record `x` can play `A` against `y` when `fp1(x) = fp2(y)` and
//! `fp2(x) = fp1(y)`. Both sides are sorted on disk in bounded runs and
//! merged, so the record files never have to fit in memory. Every hash hit
//! is re-checked with exact PAF sums.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::engine::{parse_record, CandidateRecord};
use super::plan::SearchPlan;
use super::worker::{open_records, ChunkPaths};
use crate::combinatorics::SelectionSpace;
use crate::error::{Error, Result};
use crate::verify::{verify_pair, LegendrePairResult};

/// A record file together with the plan that produced it.
#[derive(Clone, Debug)]
pub struct RecordSource {
    pub path: PathBuf,
    pub plan: SearchPlan,
}

impl RecordSource {
    /// Reads the `.plan.json` sidecar next to a record file.
    pub fn from_rec(path: &Path) -> Result<Self> {
        let plan_path = ChunkPaths::plan_for(path);
        let text = std::fs::read_to_string(&plan_path).map_err(|e| Error::io(&plan_path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            plan: serde_json::from_str(&text)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct MatchOptions {
    pub eps: f64,
    /// Entries per in-memory sorted run before spilling to disk.
    pub run_size: usize,
    /// Directory for spill files; the system temp dir when `None`.
    pub temp_dir: Option<PathBuf>,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self {
            eps: crate::DEFAULT_EPS,
            run_size: 1 << 20,
            temp_dir: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchResult {
    pub source_a: usize,
    pub rank_a: u128,
    pub source_b: usize,
    pub rank_b: u128,
    pub verified: bool,
    pub pair: Option<LegendrePairResult>,
    /// Why a hash match failed exact verification.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MatchReport {
    pub records: u64,
    pub results: Vec<MatchResult>,
}

impl MatchReport {
    pub fn verified(&self) -> impl Iterator<Item = &MatchResult> {
        self.results.iter().filter(|r| r.verified)
    }

    pub fn false_candidates(&self) -> impl Iterator<Item = &MatchResult> {
        self.results.iter().filter(|r| !r.verified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    key: String,
    source: usize,
    rank: u128,
}

impl Entry {
    fn parse(line: &str, path: &Path) -> Result<Self> {
        let bad = || Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            msg: format!("corrupt spill line {line:?}"),
        };
        let mut it = line.split(' ');
        let (Some(key), Some(src), Some(rank)) = (it.next(), it.next(), it.next()) else {
            return Err(bad());
        };
        Ok(Self {
            key: key.to_string(),
            source: src.parse().map_err(|_| bad())?,
            rank: rank.parse().map_err(|_| bad())?,
        })
    }
}

/// Accumulates entries into sorted runs, spilling full runs to disk.
struct RunSorter {
    buf: Vec<Entry>,
    run_size: usize,
    spills: Vec<tempfile::NamedTempFile>,
    temp_dir: Option<PathBuf>,
}

impl RunSorter {
    fn new(opts: &MatchOptions) -> Self {
        Self {
            buf: Vec::new(),
            run_size: opts.run_size.max(1),
            spills: Vec::new(),
            temp_dir: opts.temp_dir.clone(),
        }
    }

    fn push(&mut self, e: Entry) -> Result<()> {
        self.buf.push(e);
        if self.buf.len() >= self.run_size {
            self.spill()?;
        }
        Ok(())
    }

    fn spill(&mut self) -> Result<()> {
        self.buf.sort_unstable();
        let file = match &self.temp_dir {
            Some(d) => tempfile::NamedTempFile::new_in(d),
            None => tempfile::NamedTempFile::new(),
        }
        .map_err(|e| Error::io(self.temp_dir.clone().unwrap_or_else(std::env::temp_dir), e))?;
        let path = file.path().to_path_buf();
        let mut w = BufWriter::new(file.as_file());
        for e in self.buf.drain(..) {
            writeln!(w, "{} {} {}", e.key, e.source, e.rank)
                .map_err(|err| Error::io(&path, err))?;
        }
        w.flush().map_err(|err| Error::io(&path, err))?;
        drop(w);
        self.spills.push(file);
        Ok(())
    }

    fn finish(mut self) -> Result<SortedStream> {
        if self.spills.is_empty() {
            self.buf.sort_unstable();
            return Ok(SortedStream::Memory(self.buf.into_iter()));
        }
        if !self.buf.is_empty() {
            self.spill()?;
        }
        let mut readers = Vec::with_capacity(self.spills.len());
        let mut heap = BinaryHeap::new();
        for (i, f) in self.spills.iter().enumerate() {
            let path = f.path().to_path_buf();
            let file = File::open(&path).map_err(|e| Error::io(&path, e))?;
            let mut r = RunReader {
                lines: BufReader::new(file).lines(),
                path,
            };
            if let Some(e) = r.next_entry()? {
                heap.push(Reverse((e, i)));
            }
            readers.push(r);
        }
        Ok(SortedStream::Merge {
            readers,
            heap,
            _files: self.spills,
        })
    }
}

struct RunReader {
    lines: std::io::Lines<BufReader<File>>,
    path: PathBuf,
}

impl RunReader {
    fn next_entry(&mut self) -> Result<Option<Entry>> {
        match self.lines.next() {
            None => Ok(None),
            Some(Err(e)) => Err(Error::io(&self.path, e)),
            Some(Ok(line)) => Entry::parse(&line, &self.path).map(Some),
        }
    }
}

enum SortedStream {
    Memory(std::vec::IntoIter<Entry>),
    Merge {
        readers: Vec<RunReader>,
        heap: BinaryHeap<Reverse<(Entry, usize)>>,
        _files: Vec<tempfile::NamedTempFile>,
    },
}

impl SortedStream {
    fn next_entry(&mut self) -> Result<Option<Entry>> {
        match self {
            SortedStream::Memory(it) => Ok(it.next()),
            SortedStream::Merge { readers, heap, .. } => {
                let Some(Reverse((e, i))) = heap.pop() else {
                    return Ok(None);
                };
                if let Some(next) = readers[i].next_entry()? {
                    heap.push(Reverse((next, i)));
                }
                Ok(Some(e))
            }
        }
    }
}

/// Pulls the next group of entries sharing one key.
fn next_group(stream: &mut SortedStream, pending: &mut Option<Entry>) -> Result<Vec<Entry>> {
    let first = match pending.take() {
        Some(e) => e,
        None => match stream.next_entry()? {
            Some(e) => e,
            None => return Ok(Vec::new()),
        },
    };
    let mut group = vec![first];
    loop {
        match stream.next_entry()? {
            Some(e) if e.key == group[0].key => group.push(e),
            other => {
                *pending = other;
                return Ok(group);
            }
        }
    }
}

/// Joins candidate records from the given plans. `records` yields
/// `(source index, record)`; sources index into `plans`.
///
/// Each unordered pair of records is reported at most once, with
/// `(source_a, rank_a) <= (source_b, rank_b)`; a record is paired with
/// itself when its two fingerprints coincide.
pub fn match_candidates<I>(
    plans: &[SearchPlan],
    records: I,
    opts: &MatchOptions,
) -> Result<MatchReport>
where
    I: IntoIterator<Item = Result<(usize, CandidateRecord)>>,
{
    let Some(first) = plans.first() else {
        return Ok(MatchReport::default());
    };
    if let Some(p) = plans.iter().find(|p| p.l != first.l) {
        return Err(Error::Invalid(format!(
            "records of lengths {} and {} cannot be matched",
            first.l, p.l
        )));
    }
    let spaces: Vec<SelectionSpace> = plans.iter().map(|p| p.space()).collect::<Result<_>>()?;

    let mut side_a = RunSorter::new(opts);
    let mut side_b = RunSorter::new(opts);
    let mut count = 0u64;
    for item in records {
        let (source, rec) = item?;
        if source >= plans.len() {
            return Err(Error::Invalid(format!(
                "record source {source} has no plan"
            )));
        }
        count += 1;
        side_a.push(Entry {
            key: format!("{}{}", rec.fp1, rec.fp2),
            source,
            rank: rec.rank,
        })?;
        side_b.push(Entry {
            key: format!("{}{}", rec.fp2, rec.fp1),
            source,
            rank: rec.rank,
        })?;
    }
    let mut a = side_a.finish()?;
    let mut b = side_b.finish()?;

    let mut results = Vec::new();
    let (mut pend_a, mut pend_b) = (None, None);
    let mut ga = next_group(&mut a, &mut pend_a)?;
    let mut gb = next_group(&mut b, &mut pend_b)?;
    while !ga.is_empty() && !gb.is_empty() {
        match ga[0].key.cmp(&gb[0].key) {
            Ordering::Less => ga = next_group(&mut a, &mut pend_a)?,
            Ordering::Greater => gb = next_group(&mut b, &mut pend_b)?,
            Ordering::Equal => {
                for x in &ga {
                    for y in &gb {
                        if (x.source, x.rank) > (y.source, y.rank) {
                            continue;
                        }
                        results.push(check(&spaces, x, y, opts.eps)?);
                    }
                }
                ga = next_group(&mut a, &mut pend_a)?;
                gb = next_group(&mut b, &mut pend_b)?;
            }
        }
    }
    Ok(MatchReport {
        records: count,
        results,
    })
}

fn check(spaces: &[SelectionSpace], x: &Entry, y: &Entry, eps: f64) -> Result<MatchResult> {
    let seq_a = spaces[x.source].rank_to_sequence(x.rank)?;
    let seq_b = spaces[y.source].rank_to_sequence(y.rank)?;
    let (pair, failure) = match verify_pair(&seq_a, &seq_b, eps) {
        Ok(p) => (Some(p), None),
        Err(f) => (None, Some(f.to_string())),
    };
    Ok(MatchResult {
        source_a: x.source,
        rank_a: x.rank,
        source_b: y.source,
        rank_b: y.rank,
        verified: pair.is_some(),
        pair,
        failure,
    })
}

/// Reads every record of one file.
pub fn read_records(path: &Path) -> Result<Vec<CandidateRecord>> {
    RecordLines::open(path)?.collect()
}

struct RecordLines {
    lines: std::io::Lines<BufReader<File>>,
    path: PathBuf,
    lineno: usize,
}

impl RecordLines {
    fn open(path: &Path) -> Result<Self> {
        Ok(Self {
            lines: BufReader::new(open_records(path)?).lines(),
            path: path.to_path_buf(),
            lineno: 0,
        })
    }
}

impl Iterator for RecordLines {
    type Item = Result<CandidateRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.lineno += 1;
            return match self.lines.next()? {
                Err(e) => Some(Err(Error::io(&self.path, e))),
                Ok(line) if line.trim().is_empty() => continue,
                Ok(line) => Some(parse_record(&line, &self.path, self.lineno)),
            };
        }
    }
}

/// Matches record files, taking each file's plan from its sidecar.
/// Returns the sources in input order alongside the report.
pub fn match_files(
    paths: &[PathBuf],
    opts: &MatchOptions,
) -> Result<(Vec<RecordSource>, MatchReport)> {
    let sources: Vec<RecordSource> = paths
        .iter()
        .map(|p| RecordSource::from_rec(p))
        .collect::<Result<_>>()?;
    let plans: Vec<SearchPlan> = sources.iter().map(|s| s.plan.clone()).collect();
    let mut streams = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        streams.push(RecordLines::open(p)?.map(move |r| r.map(|rec| (i, rec))));
    }
    let report = match_candidates(&plans, streams.into_iter().flatten(), opts)?;
    Ok((sources, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Polarity;
    use crate::number_theory::Subgroup;
    use crate::published;
    use crate::search::fingerprint;

    fn record_of(space: &SelectionSpace, rank: u128) -> CandidateRecord {
        let (fp1, fp2) = fingerprint(&space.rank_to_sequence(rank).unwrap());
        CandidateRecord { rank, fp1, fp2 }
    }

    #[test]
    fn published_l117_pairs_match() {
        let fam = &published::L117_H1;
        let plan =
            SearchPlan::full(&fam.subgroup(), fam.composition(), fam.polarity, 1e-6).unwrap();
        let space = plan.space().unwrap();
        let mut recs: Vec<CandidateRecord> = published::L117_H1_RANKS
            .iter()
            .flat_map(|&(a, b)| [record_of(&space, a), record_of(&space, b)])
            .collect();
        recs.sort_by_key(|r| r.rank);
        recs.dedup();
        for run_size in [1, 3, 1 << 20] {
            let opts = MatchOptions {
                run_size,
                ..Default::default()
            };
            let report = match_candidates(
                std::slice::from_ref(&plan),
                recs.iter().cloned().map(|r| Ok((0, r))),
                &opts,
            )
            .unwrap();
            let mut found: Vec<(u128, u128)> = report
                .verified()
                .map(|m| (m.rank_a.min(m.rank_b), m.rank_a.max(m.rank_b)))
                .collect();
            found.sort();
            let mut expected: Vec<(u128, u128)> = published::L117_H1_RANKS
                .iter()
                .map(|&(a, b)| (a.min(b), a.max(b)))
                .collect();
            expected.sort();
            // every published pair is found; other hits are genuine pairs too
            for e in &expected {
                assert!(found.contains(e), "missing {e:?} (run size {run_size})");
            }
            assert_eq!(report.false_candidates().count(), 0);
        }
    }

    #[test]
    fn self_pair_at_length_three() {
        let plan = SearchPlan::full(
            &Subgroup::trivial(3),
            "2x1".parse().unwrap(),
            Polarity::Plus,
            1e-6,
        )
        .unwrap();
        let space = plan.space().unwrap();
        let recs: Vec<_> = (0..space.size()).map(|r| record_of(&space, r)).collect();
        assert!(recs.iter().all(|r| r.fp1 == r.fp2));
        let report = match_candidates(
            std::slice::from_ref(&plan),
            recs.into_iter().map(|r| Ok((0, r))),
            &MatchOptions::default(),
        )
        .unwrap();
        // the space holds the single sequence ++-, which pairs with itself
        assert!(report.verified().any(|m| m.rank_a == m.rank_b));
    }

    #[test]
    fn hash_collision_is_reported() {
        let plan = SearchPlan::full(
            &Subgroup::trivial(7),
            "4x1".parse().unwrap(),
            Polarity::Plus,
            1e-6,
        )
        .unwrap();
        let fake = |rank| CandidateRecord {
            rank,
            fp1: "000".into(),
            fp2: "000".into(),
        };
        let report = match_candidates(
            std::slice::from_ref(&plan),
            [Ok((0, fake(0))), Ok((0, fake(1)))],
            &MatchOptions::default(),
        )
        .unwrap();
        assert_eq!(report.results.len(), 3);
        assert!(report.false_candidates().count() > 0);
        for m in report.false_candidates() {
            assert!(m.failure.as_deref().unwrap().contains("PAF"));
        }
    }

    #[test]
    fn mixed_lengths_are_rejected() {
        let p7 = SearchPlan::full(
            &Subgroup::trivial(7),
            "4x1".parse().unwrap(),
            Polarity::Plus,
            1e-6,
        )
        .unwrap();
        let p5 = SearchPlan::full(
            &Subgroup::trivial(5),
            "3x1".parse().unwrap(),
            Polarity::Plus,
            1e-6,
        )
        .unwrap();
        assert!(match_candidates(&[p7, p5], std::iter::empty(), &MatchOptions::default()).is_err());
    }
}
