//! Probabilistic spanner for unweighted graphs based on exponentially
//! distributed shifts.
//!
//! Every vertex `u` draws `r_u ~ Exp(beta)` with `beta = ln(3n/eps) / k`.
//! A vertex `x` receives `m_u = r_u - d(u, x)` from every `u` within `k`
//! hops, and keeps the first edge out of `x` towards each `u` whose message
//! is within one of the best. The computation runs per receiving vertex, so
//! auxiliary memory stays linear in `n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;
use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::{components, Graph, Spanner};
use crate::Scalar;

pub const DEFAULT_EPSILON: f64 = 0.8;
pub const DEFAULT_MAX_ATTEMPTS: u32 = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnError {
    #[error("stretch must be an odd integer of at least 3, got {0}")]
    InvalidStretch(u32),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("at least one attempt is required")]
    NoAttempts,
    #[error("the probabilistic construction only supports unweighted graphs")]
    Weighted,
    #[error("shift of vertex {vertex} is {value}, not below k = {k}")]
    ShiftTooLarge { vertex: usize, value: f64, k: u32 },
    #[error("only {got} edges selected, at least {needed} required")]
    TooFewEdges { got: usize, needed: usize },
    #[error("no successful attempt within {0} tries")]
    Exhausted(u32),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

impl EnError {
    /// Failures that a fresh seed may avoid.
    pub fn is_retryable(&self) -> bool {
        matches!(self, EnError::ShiftTooLarge { .. } | EnError::TooFewEdges { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnConfig {
    alpha: u32,
    epsilon: f64,
    pub seed: u64,
    max_attempts: u32,
}

impl EnConfig {
    pub fn new(alpha: u32, epsilon: f64, seed: u64) -> Result<Self, EnError> {
        if alpha < 3 || alpha.is_multiple_of(2) {
            return Err(EnError::InvalidStretch(alpha));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(EnError::InvalidEpsilon(epsilon));
        }
        Ok(EnConfig { alpha, epsilon, seed, max_attempts: DEFAULT_MAX_ATTEMPTS })
    }

    pub fn with_max_attempts(mut self, attempts: u32) -> Result<Self, EnError> {
        if attempts == 0 {
            return Err(EnError::NoAttempts);
        }
        self.max_attempts = attempts;
        Ok(self)
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn max_attempts(&self) -> u32 {
        self.max_attempts
    }

    pub fn k(&self) -> u32 {
        self.alpha.div_ceil(2)
    }

    /// Rate of the exponential shift distribution for an `n`-vertex graph.
    pub fn beta(&self, n: usize) -> f64 {
        (3.0 * n as f64 / self.epsilon).ln() / self.k() as f64
    }

    /// Seed used by the given (zero-based) attempt.
    pub fn attempt_seed(&self, attempt: u32) -> u64 {
        self.seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Per-receiver scratch: shifts, best messages and their stored edges.
#[derive(Debug, Clone)]
pub struct BroadcastState {
    pub r: Vec<f64>,
    depth: Vec<u32>,
    first_edge: Vec<usize>,
    reached: Vec<usize>,
    queue: VecDeque<usize>,
}

const UNSEEN: u32 = u32::MAX;

impl BroadcastState {
    fn new(r: Vec<f64>) -> Self {
        let n = r.len();
        BroadcastState {
            r,
            depth: vec![UNSEEN; n],
            first_edge: vec![usize::MAX; n],
            reached: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    // Depth-k BFS from the receiver; records hop distance and the first edge out of `x`.
    fn explore<W: Scalar>(&mut self, g: &Graph<W>, x: usize, k: u32) {
        for &v in &self.reached {
            self.depth[v] = UNSEEN;
        }
        self.reached.clear();
        self.depth[x] = 0;
        self.reached.push(x);
        self.queue.push_back(x);
        while let Some(y) = self.queue.pop_front() {
            let d = self.depth[y];
            if d == k {
                continue;
            }
            for &(u, e) in g.neighbors(y) {
                if self.depth[u] == UNSEEN {
                    self.depth[u] = d + 1;
                    self.first_edge[u] = if y == x { e } else { self.first_edge[y] };
                    self.reached.push(u);
                    self.queue.push_back(u);
                }
            }
        }
    }

    fn message(&self, u: usize) -> f64 {
        self.r[u] - self.depth[u] as f64
    }
}

fn draw_shifts(n: usize, cfg: &EnConfig, seed: u64) -> Result<Vec<f64>, EnError> {
    let k = cfg.k();
    let beta = cfg.beta(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Vec::with_capacity(n);
    for vertex in 0..n {
        let u = 1.0 - rng.gen::<f64>();
        let value = -u.ln() / beta;
        if value >= k as f64 {
            return Err(EnError::ShiftTooLarge { vertex, value, k });
        }
        r.push(value);
    }
    Ok(r)
}

/// One attempt with seed `cfg.seed`.
pub fn elkin_neiman_once<'g, W: Scalar>(g: &'g Graph<W>, cfg: &EnConfig) -> Result<Spanner<'g, W>, EnError> {
    attempt(g, cfg, cfg.seed, &Deadline::never())
}

fn attempt<'g, W: Scalar>(
    g: &'g Graph<W>,
    cfg: &EnConfig,
    seed: u64,
    deadline: &Deadline,
) -> Result<Spanner<'g, W>, EnError> {
    if g.is_weighted() {
        return Err(EnError::Weighted);
    }
    let n = g.n();
    let k = cfg.k();
    let mut state = BroadcastState::new(draw_shifts(n, cfg, seed)?);
    let mut spanner = Spanner::empty(g, cfg.alpha as f64);
    for x in 0..n {
        deadline.check()?;
        state.explore(g, x, k);
        let best = state.reached.iter().map(|&u| state.message(u)).fold(f64::NEG_INFINITY, f64::max);
        let threshold = best - 1.0;
        for &u in &state.reached {
            if u != x && state.message(u) >= threshold {
                spanner.insert(state.first_edge[u]);
            }
        }
    }
    let needed = n - components(g).count;
    let got = spanner.size();
    if got < needed {
        return Err(EnError::TooFewEdges { got, needed });
    }
    Ok(spanner)
}

/// Result of the retrying driver.
#[derive(Debug, Clone)]
pub struct EnOutcome<'g, W> {
    pub spanner: Spanner<'g, W>,
    /// Number of attempts used, including the successful one.
    pub attempts: u32,
}

pub fn elkin_neiman<'g, W: Scalar>(g: &'g Graph<W>, cfg: &EnConfig) -> Result<EnOutcome<'g, W>, EnError> {
    elkin_neiman_until(g, cfg, &Deadline::never())
}

/// Retries with derived seeds until an attempt succeeds or `max_attempts` is reached.
pub fn elkin_neiman_until<'g, W: Scalar>(
    g: &'g Graph<W>,
    cfg: &EnConfig,
    deadline: &Deadline,
) -> Result<EnOutcome<'g, W>, EnError> {
    for i in 0..cfg.max_attempts {
        match attempt(g, cfg, cfg.attempt_seed(i), deadline) {
            Ok(spanner) => return Ok(EnOutcome { spanner, attempts: i + 1 }),
            Err(e) if e.is_retryable() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(EnError::Exhausted(cfg.max_attempts))
}
