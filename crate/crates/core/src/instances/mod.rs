//! Instance provisioning: a fixed-edge-count random generator and readers
//! for SteinLib, TSPLIB and a plain native format.

pub mod native;
pub mod stp;
pub mod tsplib;

use std::path::Path;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::Scalar;

pub use native::{parse_native, write_native};
pub use stp::parse_stp;
pub use tsplib::parse_tsplib;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("line {line}: malformed section: {detail}")]
    MalformedSection { line: usize, detail: String },
    #[error("declared {declared} {what} but found {found}")]
    CountMismatch { what: &'static str, declared: usize, found: usize },
    #[error("unsupported edge weight type {0}")]
    UnsupportedWeightType(String),
    #[error("edge {{{u}, {v}}} has weight zero")]
    ZeroWeightEdge { u: usize, v: usize },
    #[error("line {line}: {detail}")]
    Parse { line: usize, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Parameters of a `G(n, M)` random graph with `M = round(rel_density * n(n-1)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErSpec {
    pub n: usize,
    pub rel_density: f64,
    pub weighted: bool,
    pub seed: u64,
}

impl ErSpec {
    /// Rounds half to even after snapping away floating point noise, so
    /// `0.9 * 45` gives 40.
    pub fn edge_count(&self) -> usize {
        let exact = self.rel_density * (self.n * self.n.saturating_sub(1)) as f64 / 2.0;
        let snapped = (exact * 1e6).round() / 1e6;
        snapped.round_ties_even() as usize
    }
}

// Maps ascending row-major pair indices to pairs (u, v), u < v.
fn pairs_of_sorted(n: usize, sorted: &[usize]) -> Vec<(usize, usize)> {
    let (mut u, mut row_start) = (0, 0);
    sorted
        .iter()
        .map(|&idx| {
            while idx >= row_start + (n - 1 - u) {
                row_start += n - 1 - u;
                u += 1;
            }
            (u, u + 1 + idx - row_start)
        })
        .collect()
}

/// Exactly `M` distinct edges drawn uniformly without replacement, listed in
/// lexicographic order. Weighted graphs get uniform integer weights in `1..=n`.
pub fn gen_er<W: Scalar>(spec: &ErSpec) -> Result<Graph<W>, InstanceError> {
    if !(spec.rel_density > 0.0 && spec.rel_density < 1.0) {
        return Err(InstanceError::InfeasibleSpec(format!("relative density {} outside (0, 1)", spec.rel_density)));
    }
    let pairs = spec.n * spec.n.saturating_sub(1) / 2;
    let m = spec.edge_count();
    if m > pairs {
        return Err(InstanceError::InfeasibleSpec(format!("{m} edges exceed the {pairs} vertex pairs")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut picked = index::sample(&mut rng, pairs, m).into_vec();
    picked.sort_unstable();
    let edges = pairs_of_sorted(spec.n, &picked);
    let g = if spec.weighted {
        let n = spec.n;
        Graph::weighted(spec.n, edges.into_iter().map(|(u, v)| (u, v, W::of(rng.gen_range(1..=n) as f64))))?
    } else {
        Graph::unweighted(spec.n, edges)?
    };
    Ok(g)
}

/// Reads a file by extension: `.stp`, `.tsp`, otherwise the native format.
pub fn load<W: Scalar>(path: &Path) -> Result<Graph<W>, InstanceError> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("stp") => parse_stp(&text),
        Some("tsp") => parse_tsplib(&text),
        _ => parse_native(&text),
    }
}
