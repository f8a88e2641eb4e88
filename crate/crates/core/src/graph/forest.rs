use std::cmp::Ordering;

use super::Graph;
use crate::Scalar;

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub count: usize,
    /// Component label per vertex, numbered in order of first appearance.
    pub label: Vec<usize>,
}

pub fn components<W: Scalar>(g: &Graph<W>) -> Components {
    let mut ds = DisjointSet::new(g.n());
    for e in g.edges() {
        ds.union(e.u, e.v);
    }
    let mut label = vec![usize::MAX; g.n()];
    let mut root_label = vec![usize::MAX; g.n()];
    let mut count = 0;
    for v in 0..g.n() {
        let r = ds.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = count;
            count += 1;
        }
        label[v] = root_label[r];
    }
    Components { count, label }
}

/// Weight of a minimum spanning forest (Kruskal). Unweighted graphs yield n - #components.
pub fn mst_weight<W: Scalar>(g: &Graph<W>) -> W {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| g.weight(a).partial_cmp(&g.weight(b)).unwrap_or(Ordering::Equal));
    let mut ds = DisjointSet::new(g.n());
    let mut total = W::zero();
    for e in order {
        let edge = g.edge(e);
        if ds.union(edge.u, edge.v) {
            total = total + g.weight(e);
        }
    }
    total
}
