//! Shortest-path in- and out-arborescences for every root.

use rayon::prelude::*;

use super::{ArcView, DiGraph};
use crate::graph::paths::DijkstraScratch;
use crate::Scalar;

/// Both shortest-path trees of one root.
#[derive(Debug, Clone, PartialEq)]
pub struct ArborescencePair<W> {
    pub root: usize,
    /// `d_out[x]`: distance from the root to `x`.
    pub d_out: Vec<W>,
    /// Arc entering `x` in the out-arborescence.
    pub pred_out: Vec<Option<usize>>,
    /// `d_in[x]`: distance from `x` to the root.
    pub d_in: Vec<W>,
    /// Arc leaving `x` in the in-arborescence.
    pub pred_in: Vec<Option<usize>>,
}

impl<W: Scalar> ArborescencePair<W> {
    /// Arcs of both trees.
    pub fn arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.pred_out.iter().chain(&self.pred_in).flatten().copied()
    }

    /// Arcs of a shortest path from the root to `x`, or `None` when `x` is unreachable.
    pub fn path_from_root(&self, g: &DiGraph<W>, mut x: usize) -> Option<Vec<usize>> {
        if self.d_out[x].is_infinite() {
            return None;
        }
        let mut path = Vec::new();
        while let Some(a) = self.pred_out[x] {
            path.push(a);
            x = g.arc(a).0;
        }
        Some(path)
    }
}

fn tree<W: Scalar>(g: &DiGraph<W>, root: usize, reverse: bool) -> (Vec<W>, Vec<Option<usize>>) {
    let mut scratch = DijkstraScratch::new(g.n());
    scratch.run(&ArcView { graph: g, mask: None, reverse }, root, W::infinity(), None);
    ((0..g.n()).map(|v| scratch.dist(v)).collect(), (0..g.n()).map(|v| scratch.pred(v)).collect())
}

/// One Dijkstra per root and orientation, run in parallel over roots.
pub fn precompute_arborescences<W: Scalar>(g: &DiGraph<W>) -> Vec<ArborescencePair<W>> {
    (0..g.n())
        .into_par_iter()
        .map(|root| {
            let (d_out, pred_out) = tree(g, root, false);
            let (d_in, pred_in) = tree(g, root, true);
            ArborescencePair { root, d_out, pred_out, d_in, pred_in }
        })
        .collect()
}
