//! Repeated seeded runs of a randomized construction and their size statistics.

use serde::Serialize;
use spanner_core::metrics::summarize;
use spanner_core::{construct, AlgoConfig, Algorithm, ConstructError, Deadline, Graph64, Spanner64};
use thiserror::Error;

/// Sizes of the valid samples and their moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiRunStats {
    pub samples: Vec<usize>,
    pub failures: usize,
    pub min: f64,
    pub mean: f64,
    pub std: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Samples below `1.25 * min`.
    pub m1_count: usize,
    /// Samples below `min + 0.25 * (mean - min)`.
    pub m2_count: usize,
}

impl MultiRunStats {
    pub fn m1_threshold(&self) -> f64 {
        1.25 * self.min
    }

    pub fn m2_threshold(&self) -> f64 {
        0.25 * (self.mean - self.min) + self.min
    }

    /// Statistics of `samples`, or `None` when there are none.
    pub fn from_samples(samples: Vec<usize>, failures: usize) -> Option<Self> {
        let values: Vec<f64> = samples.iter().map(|&s| s as f64).collect();
        let s = summarize(&values).ok()?;
        let m1 = 1.25 * s.min;
        let m2 = 0.25 * (s.mean - s.min) + s.min;
        Some(MultiRunStats {
            m1_count: values.iter().filter(|&&x| x < m1).count(),
            m2_count: values.iter().filter(|&&x| x < m2).count(),
            samples,
            failures,
            min: s.min,
            mean: s.mean,
            std: s.std,
            skewness: s.skewness,
            excess_kurtosis: s.excess_kurtosis,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MultiRunError {
    #[error("{0} is deterministic")]
    NotRandomized(Algorithm),
    #[error("incompatible configuration: {0}")]
    Incompatible(String),
    #[error("all {0} runs failed")]
    AllRunsFailed(usize),
    #[error("time limit reached")]
    Timeout,
}

pub struct MultiRun<'g> {
    pub stats: MultiRunStats,
    /// Smallest spanner found, earliest seed on ties.
    pub best: Spanner64<'g>,
    pub best_seed: u64,
}

/// Runs `iterations` executions with seeds `base.seed, base.seed + 1, ...`.
/// Failed runs are counted but excluded from the samples.
pub fn multi_run<'g>(
    graph: &'g Graph64,
    algorithm: Algorithm,
    base: &AlgoConfig,
    iterations: usize,
    deadline: &Deadline,
) -> Result<MultiRun<'g>, MultiRunError> {
    if !algorithm.is_randomized() {
        return Err(MultiRunError::NotRandomized(algorithm));
    }
    let mut samples = Vec::with_capacity(iterations);
    let mut failures = 0;
    let mut best: Option<(Spanner64<'g>, u64)> = None;
    for i in 0..iterations as u64 {
        let cfg = AlgoConfig { seed: base.seed.wrapping_add(i), ..base.clone() };
        match construct(graph, algorithm, &cfg, deadline) {
            Ok(c) => {
                let size = c.spanner.size();
                samples.push(size);
                if best.as_ref().is_none_or(|(b, _)| size < b.size()) {
                    best = Some((c.spanner, cfg.seed));
                }
            }
            Err(ConstructError::Failed(_)) => failures += 1,
            Err(ConstructError::Timeout) => return Err(MultiRunError::Timeout),
            Err(ConstructError::Incompatible(reason)) => return Err(MultiRunError::Incompatible(reason)),
        }
    }
    let stats = MultiRunStats::from_samples(samples, failures).ok_or(MultiRunError::AllRunsFailed(iterations))?;
    let (best, best_seed) = best.expect("samples imply a best spanner");
    Ok(MultiRun { stats, best, best_seed })
}
