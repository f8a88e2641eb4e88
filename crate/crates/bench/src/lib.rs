//! Benchmark harness for the spanner constructions: run matrices under wall-clock
//! limits, repeated randomized runs, CSV and JSON output and summary tables.

pub mod corpus;
pub mod multirun;
pub mod record;
pub mod report;
pub mod runner;

pub use corpus::{CorpusError, CorpusSpec};
pub use multirun::{multi_run, MultiRun, MultiRunError, MultiRunStats};
pub use record::{read_csv, read_json, write_csv, write_json, CsvSink, Outcome, Quality, RecordError, RunRecord, CSV_HEADER};
pub use report::{quality_table, render, solved_table, QualityRow, SolvedRow};
pub use runner::{corpus_files, on_one_thread, plan, run_matrix, run_one, Cell, ConfigError, Instance, MatrixConfig, RunResult, Skipped};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SPANNER_BENCH_OUT";
