//! Run records and their CSV and JSON forms.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use spanner_core::{Algorithm, QualityReport};
use thiserror::Error;

pub const CSV_HEADER: [&str; 15] = [
    "instance",
    "algorithm",
    "alpha",
    "weighted",
    "seed",
    "outcome",
    "wall_ms",
    "size",
    "sparseness",
    "lightness",
    "mean_degree",
    "stretch_mean",
    "stretch_max",
    "hop_mean_diff",
    "attempts",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Solved,
    Timeout,
    Failed,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Solved => "solved",
            Outcome::Timeout => "timeout",
            Outcome::Failed => "failed",
        })
    }
}

/// Quality fields carried by a solved record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quality {
    pub size: usize,
    pub sparseness: f64,
    pub lightness: f64,
    pub mean_degree: f64,
    pub stretch_mean: f64,
    pub stretch_max: f64,
    pub hop_mean_diff: f64,
}

impl From<&QualityReport> for Quality {
    fn from(r: &QualityReport) -> Self {
        Quality {
            size: r.size,
            sparseness: r.sparseness,
            lightness: r.lightness,
            mean_degree: r.mean_degree_spanner,
            stretch_mean: r.stretch_mean,
            stretch_max: r.stretch_max,
            hop_mean_diff: r.hop_mean_diff,
        }
    }
}

/// One cell of a run matrix. `quality` is present iff the run was solved.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub weighted: bool,
    pub seed: u64,
    pub outcome: Outcome,
    /// Wall time in milliseconds, `None` when timing is suppressed.
    pub wall_ms: Option<f64>,
    pub quality: Option<Quality>,
    pub attempts: Option<u32>,
}

impl RunRecord {
    /// Drops the wall time so that output depends only on inputs.
    pub fn without_timing(mut self) -> Self {
        self.wall_ms = None;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Row {
    instance: String,
    algorithm: String,
    alpha: f64,
    weighted: bool,
    seed: u64,
    outcome: Outcome,
    wall_ms: Option<f64>,
    size: Option<usize>,
    sparseness: Option<f64>,
    lightness: Option<f64>,
    mean_degree: Option<f64>,
    stretch_mean: Option<f64>,
    stretch_max: Option<f64>,
    hop_mean_diff: Option<f64>,
    attempts: Option<u32>,
}

impl From<&RunRecord> for Row {
    fn from(r: &RunRecord) -> Self {
        let q = r.quality.as_ref();
        Row {
            instance: r.instance.clone(),
            algorithm: r.algorithm.name().to_string(),
            alpha: r.alpha,
            weighted: r.weighted,
            seed: r.seed,
            outcome: r.outcome,
            wall_ms: r.wall_ms,
            size: q.map(|q| q.size),
            sparseness: q.map(|q| q.sparseness),
            lightness: q.map(|q| q.lightness),
            mean_degree: q.map(|q| q.mean_degree),
            stretch_mean: q.map(|q| q.stretch_mean),
            stretch_max: q.map(|q| q.stretch_max),
            hop_mean_diff: q.map(|q| q.hop_mean_diff),
            attempts: r.attempts,
        }
    }
}

impl TryFrom<Row> for RunRecord {
    type Error = RecordError;

    fn try_from(row: Row) -> Result<Self, RecordError> {
        let algorithm = Algorithm::from_str(&row.algorithm).map_err(|e| RecordError::Invalid(e.to_string()))?;
        let quality = match (row.size, row.sparseness, row.lightness, row.mean_degree, row.stretch_mean, row.stretch_max, row.hop_mean_diff) {
            (Some(size), Some(sparseness), Some(lightness), Some(mean_degree), Some(stretch_mean), Some(stretch_max), Some(hop_mean_diff)) => {
                Some(Quality { size, sparseness, lightness, mean_degree, stretch_mean, stretch_max, hop_mean_diff })
            }
            (None, None, None, None, None, None, None) => None,
            _ => return Err(RecordError::Invalid(format!("{}: partial quality columns", row.instance))),
        };
        if quality.is_some() != (row.outcome == Outcome::Solved) {
            return Err(RecordError::Invalid(format!("{}: quality columns must be filled exactly for solved runs", row.instance)));
        }
        Ok(RunRecord {
            instance: row.instance,
            algorithm,
            alpha: row.alpha,
            weighted: row.weighted,
            seed: row.seed,
            outcome: row.outcome,
            wall_ms: row.wall_ms,
            quality,
            attempts: row.attempts,
        })
    }
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("invalid record: {0}")]
    Invalid(String),
}

/// Streams records as CSV rows below a fixed header.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Result<Self, RecordError> {
        let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(inner);
        writer.write_record(CSV_HEADER)?;
        writer.flush()?;
        Ok(CsvSink { writer })
    }

    pub fn push(&mut self, record: &RunRecord) -> Result<(), RecordError> {
        self.writer.serialize(Row::from(record))?;
        self.writer.flush()?;
        Ok(())
    }

    pub fn finish(self) -> Result<W, RecordError> {
        self.writer.into_inner().map_err(|e| RecordError::Io(e.into_error()))
    }
}

pub fn write_csv<'a, W: Write>(out: W, records: impl IntoIterator<Item = &'a RunRecord>) -> Result<W, RecordError> {
    let mut sink = CsvSink::new(out)?;
    for r in records {
        sink.push(r)?;
    }
    sink.finish()
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>, RecordError> {
    let mut reader = csv::Reader::from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(RecordError::Header(header));
    }
    reader.deserialize::<Row>().map(|row| RunRecord::try_from(row?)).collect()
}

/// JSON array with one object per record, keyed like the CSV columns.
pub fn write_json<'a, W: Write>(mut out: W, records: impl IntoIterator<Item = &'a RunRecord>) -> Result<W, RecordError> {
    let rows: Vec<Row> = records.into_iter().map(Row::from).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    out.write_all(b"\n")?;
    Ok(out)
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<RunRecord>, RecordError> {
    let rows: Vec<Row> = serde_json::from_reader(input)?;
    rows.into_iter().map(RunRecord::try_from).collect()
}
