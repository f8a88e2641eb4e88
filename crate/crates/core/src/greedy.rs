//! Basic greedy spanner: scan edges by nondecreasing weight and keep an
//! edge only when the partial spanner cannot already connect its endpoints
//! within `alpha * w`.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::paths::{Adjacency, DijkstraScratch};
use crate::graph::{Graph, Spanner};
use crate::Scalar;

/// Base order in which edges are considered. Weighted graphs are then
/// stably sorted by weight, so this only breaks ties there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    #[default]
    Input,
    /// Seeded uniform shuffle.
    Random(u64),
    /// Order in which a BFS (restarted per component) first scans each edge.
    Bfs,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("stretch must be at least 1, got {0}")]
pub struct InvalidStretch(pub f64);

#[derive(Debug, Clone, PartialEq)]
pub struct GreedyConfig {
    alpha: f64,
    pub order: EdgeOrder,
}

impl GreedyConfig {
    pub fn new(alpha: f64) -> Result<Self, InvalidStretch> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(InvalidStretch(alpha));
        }
        Ok(GreedyConfig { alpha, order: EdgeOrder::Input })
    }

    pub fn with_order(mut self, order: EdgeOrder) -> Self {
        self.order = order;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

struct PartialSpanner<W> {
    adj: Vec<Vec<(usize, usize, W)>>,
}

impl<W: Scalar> Adjacency<W> for PartialSpanner<W> {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    fn visit<F: FnMut(usize, usize, W)>(&self, v: usize, mut f: F) {
        for &(u, e, w) in &self.adj[v] {
            f(u, e, w);
        }
    }
}

fn base_order<W: Scalar>(g: &Graph<W>, order: EdgeOrder) -> Vec<usize> {
    match order {
        EdgeOrder::Input => (0..g.m()).collect(),
        EdgeOrder::Random(seed) => {
            let mut v: Vec<usize> = (0..g.m()).collect();
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            v
        }
        EdgeOrder::Bfs => {
            let mut seen_vertex = vec![false; g.n()];
            let mut seen_edge = vec![false; g.m()];
            let mut out = Vec::with_capacity(g.m());
            let mut queue = VecDeque::new();
            for root in 0..g.n() {
                if seen_vertex[root] {
                    continue;
                }
                seen_vertex[root] = true;
                queue.push_back(root);
                while let Some(v) = queue.pop_front() {
                    for &(u, e) in g.neighbors(v) {
                        if !seen_edge[e] {
                            seen_edge[e] = true;
                            out.push(e);
                        }
                        if !seen_vertex[u] {
                            seen_vertex[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            }
            out
        }
    }
}

/// Greedy spanner without a time limit.
pub fn addjs<'g, W: Scalar>(g: &'g Graph<W>, cfg: &GreedyConfig) -> Spanner<'g, W> {
    addjs_until(g, cfg, &Deadline::never()).expect("no deadline")
}

/// Greedy spanner, polling `deadline` once per scanned edge.
pub fn addjs_until<'g, W: Scalar>(
    g: &'g Graph<W>,
    cfg: &GreedyConfig,
    deadline: &Deadline,
) -> Result<Spanner<'g, W>, Cancelled> {
    let mut order = base_order(g, cfg.order);
    if g.is_weighted() {
        order.sort_by(|&a, &b| g.weight(a).partial_cmp(&g.weight(b)).unwrap_or(Ordering::Equal));
    }
    let alpha = W::of(cfg.alpha);
    let mut spanner = Spanner::empty(g, cfg.alpha);
    let mut partial = PartialSpanner { adj: vec![Vec::new(); g.n()] };
    let mut scratch = DijkstraScratch::new(g.n());
    for e in order {
        deadline.check()?;
        let edge = g.edge(e);
        let w = g.weight(e);
        let bound = alpha * w;
        let d = scratch.run(&partial, edge.u, bound, Some(edge.v));
        if d > bound {
            spanner.insert(e);
            partial.adj[edge.u].push((edge.v, e, w));
            partial.adj[edge.v].push((edge.u, e, w));
        }
    }
    Ok(spanner)
}
