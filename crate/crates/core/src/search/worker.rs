use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::engine::{SearchStats, Searcher};
use super::plan::{split_ranges, SearchPlan};
use crate::error::{Error, Result};

/// Files belonging to one chunk: records, plan echo and checkpoint.
#[derive(Clone, Debug)]
pub struct ChunkPaths {
    pub rec: PathBuf,
    pub plan: PathBuf,
    pub ckpt: PathBuf,
}

impl ChunkPaths {
    pub fn new(dir: &Path, plan: &SearchPlan) -> Self {
        let (lo, hi) = plan.range;
        let stem = format!("{}-{lo}-{hi}", plan.tag());
        Self {
            rec: dir.join(format!("{stem}.rec")),
            plan: dir.join(format!("{stem}.plan.json")),
            ckpt: dir.join(format!("{stem}.ckpt")),
        }
    }

    /// Sidecar plan of a record file `x.rec`, i.e. `x.plan.json`.
    pub fn plan_for(rec: &Path) -> PathBuf {
        rec.with_extension("plan.json")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Last rank whose record (if any) is in the first `bytes` bytes.
    pub last_completed: Option<u128>,
    pub bytes: u64,
    pub stats: SearchStats,
    pub done: bool,
}

impl Checkpoint {
    fn load(path: &Path) -> Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(s) => Ok(Some(serde_json::from_str(&s)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io(path, e)),
        }
    }

    fn store(&self, path: &Path) -> Result<()> {
        write_atomic(path, serde_json::to_string(self)?.as_bytes())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Debug)]
pub struct ChunkOutcome {
    pub paths: ChunkPaths,
    pub stats: SearchStats,
    /// `true` when the chunk was already complete and nothing was scanned.
    pub reused: bool,
}

/// Scans `plan.range` into `dir`, resuming from a checkpoint when one
/// exists. A checkpoint is written every `every` ranks.
pub fn run_chunk(
    plan: &SearchPlan,
    dir: &Path,
    every: u64,
    counter: Option<&AtomicU64>,
) -> Result<ChunkOutcome> {
    let searcher = Searcher::new(plan)?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let paths = ChunkPaths::new(dir, plan);

    let plan_json = serde_json::to_string_pretty(plan)?;
    match fs::read_to_string(&paths.plan) {
        Ok(existing) => {
            let existing: SearchPlan = serde_json::from_str(&existing)?;
            if &existing != plan {
                return Err(Error::Invalid(format!(
                    "{} belongs to a different plan",
                    paths.plan.display()
                )));
            }
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            write_atomic(&paths.plan, plan_json.as_bytes())?
        }
        Err(e) => return Err(Error::io(&paths.plan, e)),
    }

    let (lo, hi) = plan.range;
    let resume = Checkpoint::load(&paths.ckpt)?;
    if let Some(ck) = &resume {
        if ck.done {
            if let Some(c) = counter {
                c.store(ck.stats.scanned, Ordering::Relaxed);
            }
            return Ok(ChunkOutcome {
                paths,
                stats: ck.stats,
                reused: true,
            });
        }
    }
    let (start, mut stats, bytes) = match &resume {
        Some(ck) => (ck.last_completed.map_or(lo, |r| r + 1), ck.stats, ck.bytes),
        None => (lo, SearchStats::default(), 0),
    };
    let mut file = OpenOptions::new()
        .create(true)
        .write(true)
        .truncate(false)
        .open(&paths.rec)
        .map_err(|e| Error::io(&paths.rec, e))?;
    file.set_len(bytes).map_err(|e| Error::io(&paths.rec, e))?;
    file.seek(SeekFrom::Start(bytes))
        .map_err(|e| Error::io(&paths.rec, e))?;
    let mut out = BufWriter::new(file);
    let mut written = bytes;
    let mut since = 0u64;
    let rec_path = paths.rec.clone();
    let ckpt_path = paths.ckpt.clone();

    // the sink and the progress hook both need the writer
    let out_cell = std::cell::RefCell::new(&mut out);
    let written_cell = std::cell::Cell::new(written);
    searcher.scan(
        start,
        hi,
        &mut stats,
        |rec| {
            let line = format!("{rec}\n");
            out_cell
                .borrow_mut()
                .write_all(line.as_bytes())
                .map_err(|e| Error::io(&rec_path, e))?;
            written_cell.set(written_cell.get() + line.len() as u64);
            Ok(())
        },
        |rank, st| {
            if let Some(c) = counter {
                c.store(st.scanned, Ordering::Relaxed);
            }
            since += 1;
            if since >= every {
                since = 0;
                out_cell
                    .borrow_mut()
                    .flush()
                    .map_err(|e| Error::io(&rec_path, e))?;
                Checkpoint {
                    last_completed: Some(rank),
                    bytes: written_cell.get(),
                    stats: *st,
                    done: false,
                }
                .store(&ckpt_path)?;
            }
            Ok(())
        },
    )?;
    written = written_cell.get();
    out.flush().map_err(|e| Error::io(&paths.rec, e))?;
    out.get_ref()
        .sync_all()
        .map_err(|e| Error::io(&paths.rec, e))?;
    Checkpoint {
        last_completed: (hi > lo).then(|| hi - 1),
        bytes: written,
        stats,
        done: true,
    }
    .store(&paths.ckpt)?;
    Ok(ChunkOutcome {
        paths,
        stats,
        reused: false,
    })
}

/// Splits the plan's range over `workers` threads, each writing its own
/// chunk files. With `progress`, a line with per-worker counts goes to
/// stderr every few seconds.
pub fn run_parallel(
    plan: &SearchPlan,
    workers: usize,
    dir: &Path,
    every: u64,
    progress: bool,
) -> Result<Vec<ChunkOutcome>> {
    plan.space()?;
    let (lo, hi) = plan.range;
    let chunks: Vec<SearchPlan> = split_ranges(hi - lo, workers)
        .into_iter()
        .map(|(a, b)| plan.clone().with_range(lo + a, lo + b))
        .collect();
    let counters: Vec<AtomicU64> = chunks.iter().map(|_| AtomicU64::new(0)).collect();
    let finished = AtomicBool::new(false);
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .zip(&counters)
            .map(|(p, c)| scope.spawn(move || run_chunk(p, dir, every, Some(c))))
            .collect();
        if progress {
            let (counters, finished) = (&counters, &finished);
            scope.spawn(move || {
                let start = Instant::now();
                let mut last = Instant::now();
                while !finished.load(Ordering::Relaxed) {
                    std::thread::sleep(Duration::from_millis(100));
                    if last.elapsed() >= Duration::from_secs(5) {
                        last = Instant::now();
                        let snap: Vec<u64> =
                            counters.iter().map(|c| c.load(Ordering::Relaxed)).collect();
                        eprintln!(
                            "[{:>6.0}s] scanned {} {:?}",
                            start.elapsed().as_secs_f64(),
                            snap.iter().sum::<u64>(),
                            snap
                        );
                    }
                }
            });
        }
        let results: Vec<Result<ChunkOutcome>> = handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(Error::Invalid("search worker panicked".into())))
            })
            .collect();
        finished.store(true, Ordering::Relaxed);
        results.into_iter().collect()
    })
}

/// Opens a record file for reading, with its path for diagnostics.
pub(crate) fn open_records(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Polarity;
    use crate::number_theory::Subgroup;

    fn plan() -> SearchPlan {
        SearchPlan::full(
            &Subgroup::trivial(13),
            "7x1".parse().unwrap(),
            Polarity::Plus,
            1e-6,
        )
        .unwrap()
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let p = plan();
        let full = run_chunk(&p, &dir.path().join("a"), 100, None).unwrap();
        let reference = fs::read(&full.paths.rec).unwrap();
        assert!(!reference.is_empty());

        // simulate a crash: keep an early checkpoint and garbage after it
        let bdir = dir.path().join("b");
        let partial = p.clone().with_range(p.range.0, p.range.1);
        let out = run_chunk(&partial, &bdir, 100, None).unwrap();
        let text = String::from_utf8(reference.clone()).unwrap();
        let keep: usize = text.lines().take(3).map(|l| l.len() + 1).sum();
        let last: u128 = text
            .lines()
            .nth(2)
            .unwrap()
            .split(' ')
            .next()
            .unwrap()
            .parse()
            .unwrap();
        let mut stats = SearchStats::default();
        stats.scanned = (last + 1) as u64;
        stats.stage1_survivors = stats.scanned;
        stats.stage2_survivors = 3;
        Checkpoint {
            last_completed: Some(last),
            bytes: keep as u64,
            stats,
            done: false,
        }
        .store(&out.paths.ckpt)
        .unwrap();
        let mut f = OpenOptions::new()
            .append(true)
            .open(&out.paths.rec)
            .unwrap();
        f.write_all(b"999 garbage\n").unwrap();
        drop(f);
        let resumed = run_chunk(&partial, &bdir, 100, None).unwrap();
        assert!(!resumed.reused);
        assert_eq!(fs::read(&resumed.paths.rec).unwrap(), reference);
        assert_eq!(resumed.stats.scanned, full.stats.scanned);
        assert_eq!(resumed.stats.stage2_survivors, full.stats.stage2_survivors);

        let again = run_chunk(&partial, &bdir, 100, None).unwrap();
        assert!(again.reused);
    }

    #[test]
    fn parallel_chunks_concatenate_to_serial_output() {
        let dir = tempfile::tempdir().unwrap();
        let p = plan();
        let serial = run_chunk(&p, &dir.path().join("s"), 1 << 20, None).unwrap();
        let parts = run_parallel(&p, 3, &dir.path().join("p"), 1 << 20, false).unwrap();
        assert_eq!(parts.len(), 3);
        let mut joined = Vec::new();
        for part in &parts {
            joined.extend(fs::read(&part.paths.rec).unwrap());
        }
        assert_eq!(joined, fs::read(&serial.paths.rec).unwrap());
        assert!(ChunkPaths::plan_for(&parts[0].paths.rec).exists());
    }

    #[test]
    fn plan_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let p = plan();
        let paths = ChunkPaths::new(dir.path(), &p);
        let mut other = p.clone();
        other.eps = 0.5;
        fs::write(&paths.plan, serde_json::to_string(&other).unwrap()).unwrap();
        assert!(run_chunk(&p, dir.path(), 10, None).is_err());
    }
}
