//! Spanner approximation for arbitrary stretch on directed weighted graphs.
//!
//! Arcs are split into thick and thin by the size of their local graph.
//! Thick arcs are covered by the arborescences of sampled roots; thin arcs
//! by rounding a covering LP whose rows are minimal antispanners, found by
//! a separation oracle in a cutting-plane loop. Undirected graphs are run
//! as their bidirected version and an edge is kept when either of its arcs is.

pub mod antispanner;
pub mod arborescence;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::paths::Adjacency;
use crate::graph::{Graph, GraphError, Spanner};
use crate::lp::{LpBackend, LpError, LpProblem, SparseSimplex};
use crate::Scalar;

pub use antispanner::{
    build_min_antispanner, classify_arcs, is_settled, local_arcs, local_vertices, sample_thick_cover, Antispanner,
    AntispannerError, Settler,
};
pub use arborescence::{precompute_arborescences, ArborescencePair};

pub const DEFAULT_MAX_ITERATIONS: u32 = 200;

/// Simple directed graph with positive arc weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiGraph<W> {
    n: usize,
    arcs: Vec<(usize, usize)>,
    weights: Vec<W>,
    out: Vec<Vec<(usize, usize)>>,
    inc: Vec<Vec<(usize, usize)>>,
}

impl<W: Scalar> DiGraph<W> {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self, GraphError> {
        let mut g = DiGraph { n, arcs: Vec::new(), weights: Vec::new(), out: vec![Vec::new(); n], inc: vec![Vec::new(); n] };
        let mut seen = std::collections::HashSet::new();
        for (index, (u, v, w)) in arcs.into_iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            if !(w > W::zero() && w.is_finite()) {
                return Err(GraphError::BadWeight { index, weight: w.to_f64_lossy() });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::ParallelEdge { index, u, v });
            }
            g.push(u, v, w);
        }
        Ok(g)
    }

    /// Bidirected version of an undirected graph: edge `e` becomes arcs `2e`
    /// (`u -> v`) and `2e + 1` (`v -> u`).
    pub fn from_graph(g: &Graph<W>) -> Self {
        let n = g.n();
        let mut d = DiGraph { n, arcs: Vec::new(), weights: Vec::new(), out: vec![Vec::new(); n], inc: vec![Vec::new(); n] };
        for (e, edge) in g.edges().iter().enumerate() {
            d.push(edge.u, edge.v, g.weight(e));
            d.push(edge.v, edge.u, g.weight(e));
        }
        d
    }

    fn push(&mut self, u: usize, v: usize, w: W) {
        let id = self.arcs.len();
        self.arcs.push((u, v));
        self.weights.push(w);
        self.out[u].push((v, id));
        self.inc[v].push((u, id));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Tail and head of an arc.
    pub fn arc(&self, a: usize) -> (usize, usize) {
        self.arcs[a]
    }

    pub fn weight(&self, a: usize) -> W {
        self.weights[a]
    }

    /// `(head, arc)` for every arc leaving `v`.
    pub fn out_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.out[v]
    }

    /// `(tail, arc)` for every arc entering `v`.
    pub fn in_arcs(&self, v: usize) -> &[(usize, usize)] {
        &self.inc[v]
    }
}

/// Arc subset of a digraph, optionally traversed against arc direction.
#[derive(Clone, Copy)]
pub(crate) struct ArcView<'a, W> {
    pub graph: &'a DiGraph<W>,
    pub mask: Option<&'a [bool]>,
    pub reverse: bool,
}

impl<W: Scalar> Adjacency<W> for ArcView<'_, W> {
    fn vertex_count(&self) -> usize {
        self.graph.n
    }

    #[inline]
    fn visit<F: FnMut(usize, usize, W)>(&self, v: usize, mut f: F) {
        let list = if self.reverse { &self.graph.inc[v] } else { &self.graph.out[v] };
        for &(u, a) in list {
            if self.mask.is_none_or(|m| m[a]) {
                f(u, a, self.graph.weights[a]);
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BbmryError {
    #[error("stretch must be a finite number of at least 1, got {0}")]
    InvalidStretch(f64),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BbmryConfig {
    alpha: f64,
    pub seed: u64,
    /// Cap on cutting-plane rounds.
    pub max_iterations: u32,
    /// Wall-clock cap on the cutting-plane loop; on expiry the best
    /// rounded set is completed with shortest paths.
    pub time_budget: Option<Duration>,
}

impl BbmryConfig {
    pub fn new(alpha: f64, seed: u64) -> Result<Self, BbmryError> {
        if !(alpha.is_finite() && alpha >= 1.0) {
            return Err(BbmryError::InvalidStretch(alpha));
        }
        Ok(BbmryConfig { alpha, seed, max_iterations: DEFAULT_MAX_ITERATIONS, time_budget: None })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Selected arcs plus bookkeeping of the cutting-plane loop.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSelection {
    pub selected: Vec<bool>,
    pub thick: Vec<bool>,
    /// Cutting-plane rounds performed.
    pub iterations: u32,
    /// Rows in the final LP pool.
    pub lp_rows: usize,
    /// `false` when the loop stopped on a budget and shortest paths were added.
    pub clean_exit: bool,
    /// LP objective of the last solve.
    pub objective: f64,
}

/// Directed construction: every arc ends up settled by the selected arcs.
pub fn berman_arcs<W: Scalar>(g: &DiGraph<W>, cfg: &BbmryConfig, deadline: &Deadline) -> Result<ArcSelection, BbmryError> {
    berman_arcs_with(g, cfg, &mut SparseSimplex::default(), deadline)
}

/// [`berman_arcs`] with an explicit LP backend.
pub fn berman_arcs_with<W: Scalar>(
    g: &DiGraph<W>,
    cfg: &BbmryConfig,
    lp: &mut dyn LpBackend<f64>,
    deadline: &Deadline,
) -> Result<ArcSelection, BbmryError> {
    let started = Instant::now();
    let n = g.n();
    let alpha = W::of(cfg.alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    deadline.check()?;
    let arbs = precompute_arborescences(g);
    deadline.check()?;
    let thick = classify_arcs(g, &arbs, alpha);
    let cover = sample_thick_cover(g, &arbs, &mut rng);
    let thin: Vec<usize> = (0..g.arc_count()).filter(|&a| !thick[a]).collect();

    let scale = (n as f64).sqrt() * (n.max(2) as f64).ln();
    let mut pool = LpProblem::<f64>::new(g.arc_count());
    let mut settler = Settler::new(n);
    let mut rounded = vec![false; g.arc_count()];
    let mut unsettled = thin.clone();
    let mut iterations = 0;
    let mut objective = 0.0;
    let budget = cfg.time_budget.map_or(Deadline::never(), |b| Deadline::at(started + b));
    let lp_deadline = deadline.min(budget);

    while !unsettled.is_empty() && iterations < cfg.max_iterations && !budget.expired() {
        deadline.check()?;
        let solution = match lp.solve_until(&pool, &lp_deadline) {
            Ok(s) => s,
            Err(LpError::Cancelled(c)) if deadline.expired() => return Err(c.into()),
            Err(LpError::Cancelled(_)) => break,
            Err(e) => return Err(e.into()),
        };
        iterations += 1;
        objective = solution.objective;
        for (r, &x) in rounded.iter_mut().zip(&solution.x) {
            *r = x > 0.0 && rng.gen::<f64>() < (x * scale).min(1.0);
        }
        unsettled.clear();
        for &a in &thin {
            deadline.check()?;
            if let Ok(anti) = antispanner::build_with(&mut settler, g, &arbs, &rounded, a, alpha) {
                pool.add_row(anti.arcs)?;
                unsettled.push(a);
            }
        }
    }

    let clean_exit = unsettled.is_empty();
    let mut selected: Vec<bool> = rounded.iter().zip(&cover).map(|(&r, &c)| r || c).collect();
    // Completion: thin arcs left after a budget stop, and any thick arc the sample missed.
    let exhaustive = antispanner::sample_size(n) >= n;
    for a in 0..g.arc_count() {
        let check = if thick[a] { !exhaustive } else { !clean_exit };
        if check {
            deadline.check()?;
            if !settler.is_settled(g, &arbs, &selected, a, alpha) {
                let (s, t) = g.arc(a);
                for b in arbs[s].path_from_root(g, t).expect("arc endpoints are connected") {
                    selected[b] = true;
                }
            }
        }
    }
    Ok(ArcSelection { selected, thick, iterations, lp_rows: pool.rows().len(), clean_exit, objective })
}

/// Outcome on an undirected graph.
#[derive(Debug, Clone)]
pub struct BbmryOutcome<'g, W> {
    pub spanner: Spanner<'g, W>,
    pub arcs: ArcSelection,
}

pub fn berman_spanner<'g, W: Scalar>(g: &'g Graph<W>, cfg: &BbmryConfig) -> Result<BbmryOutcome<'g, W>, BbmryError> {
    berman_spanner_until(g, cfg, &Deadline::never())
}

pub fn berman_spanner_until<'g, W: Scalar>(
    g: &'g Graph<W>,
    cfg: &BbmryConfig,
    deadline: &Deadline,
) -> Result<BbmryOutcome<'g, W>, BbmryError> {
    let d = DiGraph::from_graph(g);
    let arcs = berman_arcs(&d, cfg, deadline)?;
    let keep = (0..g.m()).filter(|&e| arcs.selected[2 * e] || arcs.selected[2 * e + 1]);
    let spanner = Spanner::from_edges(g, keep, cfg.alpha);
    Ok(BbmryOutcome { spanner, arcs })
}
