//! Single runs and run matrices with wall-clock limits.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use log::{info, warn};
use spanner_core::instances::{load, InstanceError};
use spanner_core::{construct, measure, validate_spanner, AlgoConfig, Algorithm, ConstructError, Deadline, Graph64, Spanner64};
use thiserror::Error;

use crate::record::{Outcome, Quality, RunRecord};

/// A named graph. Weighted instances can also run with their weights dropped.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph64,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph64) -> Self {
        Instance { id: id.into(), graph }
    }

    /// Loads a graph file; the id is the file stem.
    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        Ok(Instance { id, graph: load(path)? })
    }

    /// Graph in the requested weighting, or `None` when weights are asked for but absent.
    pub fn variant(&self, weighted: bool) -> Option<Graph64> {
        match (weighted, self.graph.is_weighted()) {
            (true, true) => Some(self.graph.clone()),
            (true, false) => None,
            (false, true) => Some(self.graph.without_weights()),
            (false, false) => Some(self.graph.clone()),
        }
    }
}

/// Graph files of a directory in name order, or the single given file.
pub fn corpus_files(path: &Path) -> std::io::Result<Vec<PathBuf>> {
    if path.is_file() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("txt" | "stp" | "tsp")));
    files.sort();
    Ok(files)
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("incompatible configuration for {algorithm} at alpha {alpha}: {reason}")]
pub struct ConfigError {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub reason: String,
}

/// A run's record together with the spanner it produced.
pub struct RunResult<'g> {
    pub record: RunRecord,
    pub spanner: Option<Spanner64<'g>>,
}

/// Runs one cell on `graph` under a wall-clock limit. A spanner that fails
/// validation is reported as failed.
pub fn run_one<'g>(
    instance_id: &str,
    graph: &'g Graph64,
    algorithm: Algorithm,
    cfg: &AlgoConfig,
    timelimit: Duration,
) -> Result<RunResult<'g>, ConfigError> {
    let config_error = |reason| ConfigError { algorithm, alpha: cfg.alpha, reason };
    if let Some(reason) = algorithm.incompatibility(cfg.alpha, graph.is_weighted()) {
        return Err(config_error(reason));
    }
    let mut record = RunRecord {
        instance: instance_id.to_string(),
        algorithm,
        alpha: cfg.alpha,
        weighted: graph.is_weighted(),
        seed: cfg.seed,
        outcome: Outcome::Failed,
        wall_ms: None,
        quality: None,
        attempts: None,
    };
    let start = Instant::now();
    let built = construct(graph, algorithm, cfg, &Deadline::after(timelimit));
    let elapsed = start.elapsed();
    record.wall_ms = Some((elapsed.as_secs_f64() * 1e3 * 1e3).round() / 1e3);
    let spanner = match built {
        Ok(c) => {
            record.attempts = Some(c.attempts);
            let check = validate_spanner(&c.spanner);
            if check.valid {
                record.outcome = Outcome::Solved;
                record.quality = Some(Quality::from(&measure(&c.spanner)));
                Some(c.spanner)
            } else {
                warn!("{instance_id} {algorithm} alpha={}: invalid spanner, worst pair {:?}", cfg.alpha, check.worst);
                None
            }
        }
        Err(ConstructError::Timeout) => {
            record.outcome = Outcome::Timeout;
            None
        }
        Err(ConstructError::Failed(reason)) => {
            warn!("{instance_id} {algorithm} alpha={}: {reason}", cfg.alpha);
            if algorithm == Algorithm::En {
                record.attempts = Some(cfg.max_attempts);
            }
            None
        }
        Err(ConstructError::Incompatible(reason)) => return Err(config_error(reason)),
    };
    Ok(RunResult { record, spanner })
}

/// Cartesian product of instances, algorithms, stretches, weightings and seeds.
#[derive(Debug, Clone)]
pub struct MatrixConfig {
    pub algorithms: Vec<Algorithm>,
    pub stretches: Vec<f64>,
    pub weightings: Vec<bool>,
    pub seeds: Vec<u64>,
    pub timelimit: Duration,
    pub threads: usize,
    pub timing: bool,
    /// Template for the remaining algorithm parameters.
    pub base: AlgoConfig,
}

impl MatrixConfig {
    pub fn new(algorithms: Vec<Algorithm>) -> Self {
        MatrixConfig {
            algorithms,
            stretches: vec![2.0, 3.0, 4.0, 5.0, 7.0],
            weightings: vec![true, false],
            seeds: vec![0],
            timelimit: Duration::from_secs(60),
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            timing: true,
            base: AlgoConfig::new(1.0, 0),
        }
    }
}

/// One matrix entry that will be executed.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub instance: usize,
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub weighted: bool,
    pub seed: u64,
}

/// A matrix entry left out, with the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct Skipped {
    pub instance: String,
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub weighted: bool,
    pub reason: String,
}

/// Expands the matrix in instance, algorithm, stretch, weighting, seed order.
/// Deterministic algorithms run once with the first seed.
pub fn plan(instances: &[Instance], cfg: &MatrixConfig) -> (Vec<Cell>, Vec<Skipped>) {
    let (mut cells, mut skipped) = (Vec::new(), Vec::new());
    for (i, inst) in instances.iter().enumerate() {
        for &algorithm in &cfg.algorithms {
            for &alpha in &cfg.stretches {
                for &weighted in &cfg.weightings {
                    let skip = |reason: String| Skipped { instance: inst.id.clone(), algorithm, alpha, weighted, reason };
                    if weighted && !inst.graph.is_weighted() {
                        skipped.push(skip("instance has no weights".into()));
                        continue;
                    }
                    if let Some(reason) = algorithm.incompatibility(alpha, weighted) {
                        skipped.push(skip(reason));
                        continue;
                    }
                    let seeds = if algorithm.is_randomized() { &cfg.seeds[..] } else { &cfg.seeds[..cfg.seeds.len().min(1)] };
                    for &seed in seeds {
                        cells.push(Cell { instance: i, algorithm, alpha, weighted, seed });
                    }
                }
            }
        }
    }
    (cells, skipped)
}

fn single_threaded() -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool")
}

/// Runs `f` with any data-parallel work inside confined to the calling thread.
pub fn on_one_thread<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    single_threaded().install(f)
}

fn run_cell(instances: &[Instance], cell: &Cell, cfg: &MatrixConfig) -> RunRecord {
    let inst = &instances[cell.instance];
    let graph = inst.variant(cell.weighted).expect("planned cells have their weighting");
    let algo_cfg = AlgoConfig { alpha: cell.alpha, seed: cell.seed, ..cfg.base.clone() };
    let record = run_one(&inst.id, &graph, cell.algorithm, &algo_cfg, cfg.timelimit)
        .expect("planned cells are compatible")
        .record;
    if cfg.timing {
        record
    } else {
        record.without_timing()
    }
}

/// Executes every planned cell on a pool of single-threaded workers and
/// hands records to `emit` in plan order as soon as each prefix completes.
pub fn run_matrix<E>(
    instances: &[Instance],
    cfg: &MatrixConfig,
    mut emit: impl FnMut(RunRecord) -> Result<(), E>,
) -> Result<Vec<Skipped>, E> {
    let (cells, skipped) = plan(instances, cfg);
    for s in &skipped {
        info!("skip {} {} alpha={} weighted={}: {}", s.instance, s.algorithm, s.alpha, s.weighted, s.reason);
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel();
    let workers = cfg.threads.clamp(1, cells.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, cells) = (&next, &cells);
            scope.spawn(move || {
                let pool = single_threaded();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(cell) = cells.get(i) else { break };
                    let record = pool.install(|| run_cell(instances, cell, cfg));
                    if tx.send((i, record)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut emitted = 0;
        for (i, record) in rx.iter() {
            pending.insert(i, record);
            while let Some(record) = pending.remove(&emitted) {
                if let Err(e) = emit(record) {
                    next.store(cells.len(), Ordering::Relaxed);
                    return Err(e);
                }
                emitted += 1;
            }
        }
        Ok(skipped)
    })
}
