//! Undirected graph substrate shared by every construction and measure.

pub mod forest;
pub mod paths;
pub mod validate;

use std::collections::HashSet;

use thiserror::Error;

use crate::Scalar;

pub use forest::{components, mst_weight, Components, DisjointSet};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("edge {index} references vertex {vertex} but the graph has {n} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("edge {index} is a self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("edge {index} duplicates the edge {{{u}, {v}}}")]
    ParallelEdge { index: usize, u: usize, v: usize },
    #[error("edge {index} has non-positive or non-finite weight {weight}")]
    BadWeight { index: usize, weight: f64 },
    #[error("edge mask has length {got}, expected {expected}")]
    MaskLength { got: usize, expected: usize },
}

/// An undirected edge between two distinct vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// Endpoints ordered as `(min, max)`.
    pub fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Simple undirected graph with optional positive edge weights.
///
/// Unweighted graphs carry no weight vector; every distance routine then
/// uses unit weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<W> {
    n: usize,
    edges: Vec<Edge>,
    weights: Option<Vec<W>>,
    // (neighbor, edge index) per vertex
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl<W: Scalar> Graph<W> {
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let edges = edges.into_iter().map(|(u, v)| Edge { u, v }).collect();
        Self::build(n, edges, None)
    }

    pub fn weighted(n: usize, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self, GraphError> {
        let (edges, weights): (Vec<_>, Vec<_>) = edges.into_iter().map(|(u, v, w)| (Edge { u, v }, w)).unzip();
        Self::build(n, edges, Some(weights))
    }

    fn build(n: usize, edges: Vec<Edge>, weights: Option<Vec<W>>) -> Result<Self, GraphError> {
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n];
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if e.u == e.v {
                return Err(GraphError::SelfLoop { index, vertex: e.u });
            }
            if !seen.insert(e.key()) {
                let (u, v) = e.key();
                return Err(GraphError::ParallelEdge { index, u, v });
            }
            if let Some(ws) = &weights {
                let w = ws[index];
                if !(w.is_finite() && w > W::zero()) {
                    return Err(GraphError::BadWeight { index, weight: w.to_f64_lossy() });
                }
            }
            adjacency[e.u].push((e.v, index));
            adjacency[e.v].push((e.u, index));
        }
        Ok(Graph { n, edges, weights, adjacency })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    /// Weight of edge `e`; one for unweighted graphs.
    #[inline]
    pub fn weight(&self, e: usize) -> W {
        match &self.weights {
            Some(ws) => ws[e],
            None => W::one(),
        }
    }

    /// Raw weight vector, absent for unweighted graphs.
    pub fn weights(&self) -> Option<&[W]> {
        self.weights.as_deref()
    }

    /// Incident `(neighbor, edge index)` pairs of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Index of the edge `{u, v}` if present.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].iter().find(|&&(x, _)| x == b).map(|&(_, e)| e)
    }

    pub fn total_weight(&self) -> W {
        (0..self.m()).map(|e| self.weight(e)).sum()
    }

    /// Same topology with the weights dropped.
    pub fn without_weights(&self) -> Self {
        Graph { n: self.n, edges: self.edges.clone(), weights: None, adjacency: self.adjacency.clone() }
    }

    /// Same topology with the given weights attached.
    pub fn with_weights(&self, weights: Vec<W>) -> Result<Self, GraphError> {
        Self::build(self.n, self.edges.clone(), Some(weights))
    }

    /// Absolute density m/n.
    pub fn absolute_density(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.m() as f64 / self.n as f64
        }
    }

    /// Relative density m / C(n, 2).
    pub fn relative_density(&self) -> f64 {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        if pairs == 0 {
            0.0
        } else {
            self.m() as f64 / pairs as f64
        }
    }

    /// Converts weights into another scalar type.
    pub fn cast<V: Scalar>(&self) -> Graph<V> {
        Graph {
            n: self.n,
            edges: self.edges.clone(),
            weights: self
                .weights
                .as_ref()
                .map(|ws| ws.iter().map(|w| V::of(w.to_f64_lossy())).collect()),
            adjacency: self.adjacency.clone(),
        }
    }
}

/// Edge subset of a parent graph together with the stretch it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct Spanner<'g, W> {
    parent: &'g Graph<W>,
    mask: Vec<bool>,
    alpha: f64,
}

impl<'g, W: Scalar> Spanner<'g, W> {
    /// Spanner without any edges.
    pub fn empty(parent: &'g Graph<W>, alpha: f64) -> Self {
        Spanner { parent, mask: vec![false; parent.m()], alpha }
    }

    /// The whole graph, which is a spanner of itself for any stretch.
    pub fn full(parent: &'g Graph<W>, alpha: f64) -> Self {
        Spanner { parent, mask: vec![true; parent.m()], alpha }
    }

    pub fn from_mask(parent: &'g Graph<W>, mask: Vec<bool>, alpha: f64) -> Result<Self, GraphError> {
        if mask.len() != parent.m() {
            return Err(GraphError::MaskLength { got: mask.len(), expected: parent.m() });
        }
        Ok(Spanner { parent, mask, alpha })
    }

    pub fn from_edges(parent: &'g Graph<W>, edges: impl IntoIterator<Item = usize>, alpha: f64) -> Self {
        let mut s = Self::empty(parent, alpha);
        for e in edges {
            s.mask[e] = true;
        }
        s
    }

    pub fn parent(&self) -> &'g Graph<W> {
        self.parent
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask[e]
    }

    pub fn insert(&mut self, e: usize) -> bool {
        !std::mem::replace(&mut self.mask[e], true)
    }

    pub fn remove(&mut self, e: usize) -> bool {
        std::mem::replace(&mut self.mask[e], false)
    }

    /// Number of spanner edges |E'|.
    pub fn size(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn edge_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e)
    }

    /// W(E').
    pub fn weight(&self) -> W {
        self.edge_indices().map(|e| self.parent.weight(e)).sum()
    }

    /// The spanner as a standalone graph on the same vertex set.
    pub fn to_graph(&self) -> Graph<W> {
        let edges: Vec<Edge> = self.edge_indices().map(|e| self.parent.edge(e)).collect();
        let weights = self.parent.weights.as_ref().map(|ws| self.edge_indices().map(|e| ws[e]).collect());
        Graph::build(self.parent.n, edges, weights).expect("subgraph of a valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            Graph::<f64>::unweighted(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(Graph::<f64>::unweighted(3, [(1, 1)]), Err(GraphError::SelfLoop { .. })));
        assert!(matches!(
            Graph::<f64>::unweighted(3, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge { u: 0, v: 1, .. })
        ));
        assert!(matches!(Graph::weighted(2, [(0, 1, 0.0)]), Err(GraphError::BadWeight { .. })));
        assert!(matches!(Graph::weighted(2, [(0, 1, f64::NAN)]), Err(GraphError::BadWeight { .. })));
    }

    #[test]
    fn adjacency_rows_match_edges() {
        let g = Graph::<f64>::unweighted(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let total: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.m());
        for (e, edge) in g.edges().iter().enumerate() {
            assert!(g.neighbors(edge.u).contains(&(edge.v, e)));
            assert!(g.neighbors(edge.v).contains(&(edge.u, e)));
        }
        assert_eq!(g.find_edge(2, 0), Some(4));
        assert_eq!(g.find_edge(1, 3), None);
    }

    #[test]
    fn densities() {
        let g = Graph::<f64>::unweighted(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.absolute_density(), 0.75);
        assert_eq!(g.relative_density(), 0.5);
    }

    #[test]
    fn spanner_mask_bookkeeping() {
        let g = Graph::weighted(3, [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 4.0)]).unwrap();
        let mut h = Spanner::empty(&g, 2.0);
        assert!(h.insert(2));
        assert!(!h.insert(2));
        h.insert(0);
        assert_eq!(h.size(), 2);
        assert_eq!(h.weight(), 6.0);
        let sub = h.to_graph();
        assert_eq!(sub.m(), 2);
        assert!(Spanner::from_mask(&g, vec![true], 1.0).is_err());
    }
}
