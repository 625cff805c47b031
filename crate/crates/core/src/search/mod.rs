//! Union-of-orbits search: two-stage PSD filtering, fingerprint records,
//! chunked workers with checkpoints and complementary-pair matching.

mod engine;
mod matcher;
mod plan;
mod worker;

pub use engine::{
    fingerprint, fingerprint_lags, lag_class_representatives, parse_record, run_search,
    CandidateRecord, SearchStats, Searcher,
};
pub use matcher::{
    match_candidates, match_files, read_records, MatchOptions, MatchReport, MatchResult,
    RecordSource,
};
pub use plan::{all_compositions, allowed_third_psd, split_ranges, SearchPlan};
pub use worker::{run_chunk, run_parallel, Checkpoint, ChunkOutcome, ChunkPaths};
