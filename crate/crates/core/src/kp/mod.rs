//! 2-spanner approximation by repeatedly covering the densest neighborhood
//! subgraph with a star.
//!
//! Only two edge sets are kept: the uncovered edges (the shrinking input)
//! and the spanner. Selecting the densest subset `U_w` of some neighborhood
//! adds the star `{w, u}, u in U_w` to the spanner and deletes the star and
//! every edge inside `U_w` from the uncovered set. The loop ends once no
//! neighborhood has a subset of density above one; leftover uncovered edges
//! then go into the spanner unchanged.

pub mod density;
pub mod flow;

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::{Graph, Spanner};
use crate::Scalar;

pub use density::{max_density_subgraph, DenseSubgraph, DensityError};
pub use flow::{max_flow, FlowNetwork, MaxFlow, PushRelabelOptions};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KpError {
    #[error("the dense-subset 2-spanner only supports unweighted graphs")]
    Weighted,
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

/// Densest subset of one vertex's uncovered neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSubset {
    pub owner: usize,
    pub members: Vec<usize>,
    /// Uncovered edges with both ends in `members`.
    pub internal_edges: Vec<usize>,
}

impl DenseSubset {
    pub fn density(&self) -> f64 {
        self.internal_edges.len() as f64 / self.members.len() as f64
    }
}

// Exact ratio num/den, compared by cross multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    fn exceeds_one(self) -> bool {
        self.num > self.den
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HeapKey {
    density: Ratio,
    vertex: usize,
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.density.cmp(&other.density).then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Uncovered {
    alive: Vec<bool>,
    adj: Vec<HashSet<usize>>,
}

impl Uncovered {
    fn new<W: Scalar>(g: &Graph<W>) -> Self {
        let mut adj = vec![HashSet::new(); g.n()];
        for e in g.edges() {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
        Uncovered { alive: vec![true; g.m()], adj }
    }

    fn remove<W: Scalar>(&mut self, g: &Graph<W>, e: usize) {
        if std::mem::replace(&mut self.alive[e], false) {
            let edge = g.edge(e);
            self.adj[edge.u].remove(&edge.v);
            self.adj[edge.v].remove(&edge.u);
        }
    }
}

// The uncovered neighborhood of `v` as a local graph.
struct Neighborhood {
    members: Vec<usize>,
    local_edges: Vec<(usize, usize)>,
    edge_ids: Vec<usize>,
}

fn neighborhood<W: Scalar>(g: &Graph<W>, unc: &Uncovered, v: usize, local: &mut [usize]) -> Neighborhood {
    let mut members: Vec<usize> = unc.adj[v].iter().copied().collect();
    members.sort_unstable();
    for (i, &u) in members.iter().enumerate() {
        local[u] = i;
    }
    let mut local_edges = Vec::new();
    let mut edge_ids = Vec::new();
    for (i, &u) in members.iter().enumerate() {
        for &(x, e) in g.neighbors(u) {
            if x > u && unc.alive[e] && unc.adj[v].contains(&x) {
                local_edges.push((i, local[x]));
                edge_ids.push(e);
            }
        }
    }
    Neighborhood { members, local_edges, edge_ids }
}

// Largest k with a nonempty k-core; an upper bound on the maximum density.
fn degeneracy(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut deg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        adj[u].push(v);
        adj[v].push(u);
    }
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut buckets = vec![Vec::new(); max_deg + 1];
    for (v, &d) in deg.iter().enumerate() {
        buckets[d].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut d = 0;
    let mut left = n;
    while left > 0 {
        while d > 0 && !buckets[d - 1].is_empty() {
            d -= 1;
        }
        let Some(v) = buckets[d].pop() else {
            d += 1;
            continue;
        };
        if removed[v] || deg[v] != d {
            continue;
        }
        removed[v] = true;
        left -= 1;
        best = best.max(d);
        for &u in &adj[v] {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
            }
        }
    }
    best
}

fn densest_subset<W: Scalar>(
    g: &Graph<W>,
    unc: &Uncovered,
    v: usize,
    local: &mut [usize],
) -> Option<(Ratio, DenseSubset)> {
    let hood = neighborhood(g, unc, v, local);
    if hood.local_edges.is_empty() || degeneracy(hood.members.len(), &hood.local_edges) <= 1 {
        return None;
    }
    let dense = max_density_subgraph::<f64>(hood.members.len(), &hood.local_edges).expect("nonempty neighborhood");
    let mut inside = vec![false; hood.members.len()];
    for &i in &dense.vertices {
        inside[i] = true;
    }
    let internal_edges = hood
        .local_edges
        .iter()
        .zip(&hood.edge_ids)
        .filter(|((a, b), _)| inside[*a] && inside[*b])
        .map(|(_, &e)| e)
        .collect::<Vec<_>>();
    let members = dense.vertices.iter().map(|&i| hood.members[i]).collect::<Vec<_>>();
    let ratio = Ratio { num: internal_edges.len() as u64, den: members.len() as u64 };
    Some((ratio, DenseSubset { owner: v, members, internal_edges }))
}

pub fn kortsarz_peleg<W: Scalar>(g: &Graph<W>) -> Result<Spanner<'_, W>, KpError> {
    kortsarz_peleg_until(g, &Deadline::never())
}

/// 2-spanner construction, polling `deadline` before every densest-subset computation.
///
/// Neighborhood densities only shrink as edges are covered, so every heap
/// key stays an upper bound. Each vertex holds at most one entry; a popped
/// entry whose vertex is dirty is recomputed and pushed back with its exact
/// density, and the first clean entry popped is the global maximum.
pub fn kortsarz_peleg_until<'g, W: Scalar>(g: &'g Graph<W>, deadline: &Deadline) -> Result<Spanner<'g, W>, KpError> {
    if g.is_weighted() {
        return Err(KpError::Weighted);
    }
    let n = g.n();
    let mut spanner = Spanner::empty(g, 2.0);
    let mut unc = Uncovered::new(g);
    let mut local = vec![0usize; n];
    let mut dirty = vec![true; n];
    let mut cached: Vec<Option<DenseSubset>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    for v in 0..n {
        // d vertices span at most d(d-1)/2 edges
        let bound = Ratio { num: g.degree(v).saturating_sub(1) as u64, den: 2 };
        if bound.exceeds_one() {
            heap.push(HeapKey { density: bound, vertex: v });
        }
    }

    while let Some(top) = heap.pop() {
        let v = top.vertex;
        if dirty[v] {
            deadline.check()?;
            dirty[v] = false;
            if let Some((density, subset)) = densest_subset(g, &unc, v, &mut local) {
                if density.exceeds_one() {
                    heap.push(HeapKey { density, vertex: v });
                    cached[v] = Some(subset);
                }
            }
            continue;
        }
        let subset = cached[v].take().expect("clean entry has a cached subset");

        let mut removed = Vec::with_capacity(subset.members.len() + subset.internal_edges.len());
        for &u in &subset.members {
            let e = g.find_edge(v, u).expect("star edge exists");
            spanner.insert(e);
            removed.push(e);
        }
        removed.extend_from_slice(&subset.internal_edges);
        // Endpoints and common uncovered neighbors see their neighborhood shrink.
        let mut touched = Vec::new();
        for &e in &removed {
            let edge = g.edge(e);
            touched.push(edge.u);
            touched.push(edge.v);
            let (small, large) = if unc.adj[edge.u].len() <= unc.adj[edge.v].len() {
                (edge.u, edge.v)
            } else {
                (edge.v, edge.u)
            };
            touched.extend(unc.adj[small].iter().copied().filter(|x| unc.adj[large].contains(x)));
        }
        for &e in &removed {
            unc.remove(g, e);
        }
        for x in touched {
            dirty[x] = true;
            cached[x] = None;
        }
        heap.push(HeapKey { density: top.density, vertex: v });
    }

    for e in 0..g.m() {
        if unc.alive[e] {
            spanner.insert(e);
        }
    }
    Ok(spanner)
}
