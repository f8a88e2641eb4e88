//! Shortest-path primitives: bounded Dijkstra, depth-limited BFS and APSP.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use super::Graph;
use crate::Scalar;

thread_local! {
    static TRAVERSALS: Cell<u64> = const { Cell::new(0) };
}

/// Number of Dijkstra/BFS traversals started on the current thread.
pub fn traversal_count() -> u64 {
    TRAVERSALS.with(|c| c.get())
}

fn count_traversal() {
    TRAVERSALS.with(|c| c.set(c.get() + 1));
}

/// Read-only weighted adjacency that a traversal can walk.
pub trait Adjacency<W> {
    fn vertex_count(&self) -> usize;
    /// Calls `f(neighbor, edge id, weight)` for every usable edge leaving `v`.
    fn visit<F: FnMut(usize, usize, W)>(&self, v: usize, f: F);
}

/// A graph restricted to the edges whose mask bit is set.
#[derive(Clone, Copy)]
pub struct Masked<'a, W> {
    pub graph: &'a Graph<W>,
    pub mask: Option<&'a [bool]>,
}

impl<'a, W: Scalar> Masked<'a, W> {
    pub fn new(graph: &'a Graph<W>, mask: Option<&'a [bool]>) -> Self {
        Masked { graph, mask }
    }
}

impl<W: Scalar> Adjacency<W> for Masked<'_, W> {
    fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    fn visit<F: FnMut(usize, usize, W)>(&self, v: usize, mut f: F) {
        for &(u, e) in self.graph.neighbors(v) {
            if self.mask.is_none_or(|m| m[e]) {
                f(u, e, self.graph.weight(e));
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Entry<W> {
    dist: W,
    vertex: usize,
}

impl<W: PartialOrd> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<W: PartialOrd> Eq for Entry<W> {}
impl<W: PartialOrd> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<W: PartialOrd> Ord for Entry<W> {
    // min-heap on distance, ties by vertex id
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Reusable Dijkstra state; only touched entries are reset between runs.
#[derive(Debug, Clone)]
pub struct DijkstraScratch<W> {
    dist: Vec<W>,
    pred: Vec<Option<usize>>,
    done: Vec<bool>,
    touched: Vec<usize>,
    heap: BinaryHeap<Entry<W>>,
}

impl<W: Scalar> DijkstraScratch<W> {
    pub fn new(n: usize) -> Self {
        DijkstraScratch {
            dist: vec![W::infinity(); n],
            pred: vec![None; n],
            done: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.dist[v] = W::infinity();
            self.pred[v] = None;
            self.done[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Runs Dijkstra from `src`, never settling anything farther than `bound`.
    /// Stops early once `target` is settled. Returns the distance to
    /// `target` (infinity when it lies beyond the bound).
    pub fn run<A: Adjacency<W>>(&mut self, adj: &A, src: usize, bound: W, target: Option<usize>) -> W {
        count_traversal();
        self.reset();
        if self.dist.len() < adj.vertex_count() {
            *self = Self::new(adj.vertex_count());
        }
        self.dist[src] = W::zero();
        self.touched.push(src);
        self.heap.push(Entry { dist: W::zero(), vertex: src });
        while let Some(Entry { dist, vertex }) = self.heap.pop() {
            if self.done[vertex] {
                continue;
            }
            self.done[vertex] = true;
            if Some(vertex) == target {
                return dist;
            }
            let (dists, preds, touched, heap, done) =
                (&mut self.dist, &mut self.pred, &mut self.touched, &mut self.heap, &self.done);
            adj.visit(vertex, |u, e, w| {
                if done[u] {
                    return;
                }
                let nd = dist + w;
                if nd <= bound && nd < dists[u] {
                    if dists[u] == W::infinity() {
                        touched.push(u);
                    }
                    dists[u] = nd;
                    preds[u] = Some(e);
                    heap.push(Entry { dist: nd, vertex: u });
                }
            });
        }
        match target {
            Some(t) if self.done[t] => self.dist[t],
            _ => W::infinity(),
        }
    }

    /// Distance found by the last run; infinity for unreached vertices.
    pub fn dist(&self, v: usize) -> W {
        if self.done[v] {
            self.dist[v]
        } else {
            W::infinity()
        }
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        if self.done[v] {
            self.pred[v]
        } else {
            None
        }
    }

    /// Vertices settled by the last run.
    pub fn settled(&self) -> impl Iterator<Item = usize> + '_ {
        self.touched.iter().copied().filter(|&v| self.done[v])
    }
}

/// Single-source result: distance and predecessor edge per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths<W> {
    pub dist: Vec<W>,
    pub pred_edge: Vec<Option<usize>>,
}

/// Dijkstra from `src` over the masked graph. Vertices farther than `bound`
/// are reported as unreached (infinite distance, no predecessor).
pub fn dijkstra_bounded<W: Scalar>(g: &Graph<W>, src: usize, bound: W, mask: Option<&[bool]>) -> ShortestPaths<W> {
    let mut scratch = DijkstraScratch::new(g.n());
    scratch.run(&Masked::new(g, mask), src, bound, None);
    ShortestPaths {
        dist: (0..g.n()).map(|v| scratch.dist(v)).collect(),
        pred_edge: (0..g.n()).map(|v| scratch.pred(v)).collect(),
    }
}

/// Depth-limited BFS result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    pub hops: Vec<Option<usize>>,
    /// First edge leaving the source on the discovered shortest path.
    pub first_edge: Vec<Option<usize>>,
}

pub fn bfs_depth_limited<W: Scalar>(g: &Graph<W>, src: usize, depth: usize) -> BfsTree {
    count_traversal();
    let mut hops = vec![None; g.n()];
    let mut first_edge = vec![None; g.n()];
    let mut queue = VecDeque::new();
    hops[src] = Some(0);
    queue.push_back(src);
    while let Some(y) = queue.pop_front() {
        let d = hops[y].unwrap();
        if d == depth {
            continue;
        }
        for &(u, e) in g.neighbors(y) {
            if hops[u].is_none() {
                hops[u] = Some(d + 1);
                first_edge[u] = if y == src { Some(e) } else { first_edge[y] };
                queue.push_back(u);
            }
        }
    }
    BfsTree { hops, first_edge }
}

/// All-pairs distances with minimum hop counts among shortest paths.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix<W> {
    n: usize,
    dist: Vec<W>,
    hops: Vec<u32>,
}

impl<W: Scalar> DistanceMatrix<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, u: usize, v: usize) -> W {
        self.dist[u * self.n + v]
    }

    #[inline]
    pub fn hops(&self, u: usize, v: usize) -> u32 {
        self.hops[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[W] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }
}

#[derive(Debug, Clone, Copy)]
struct LexEntry<W> {
    dist: W,
    hops: u32,
    vertex: usize,
}

impl<W: PartialOrd> PartialEq for LexEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<W: PartialOrd> Eq for LexEntry<W> {}
impl<W: PartialOrd> PartialOrd for LexEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<W: PartialOrd> Ord for LexEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.hops.cmp(&self.hops))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

fn lex_row<W: Scalar>(adj: &Masked<'_, W>, src: usize) -> (Vec<W>, Vec<u32>) {
    let n = adj.vertex_count();
    let mut dist = vec![W::infinity(); n];
    let mut hops = vec![0u32; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[src] = W::zero();
    heap.push(LexEntry { dist: W::zero(), hops: 0, vertex: src });
    while let Some(LexEntry { dist: d, hops: h, vertex }) = heap.pop() {
        if done[vertex] {
            continue;
        }
        done[vertex] = true;
        adj.visit(vertex, |u, _, w| {
            if done[u] {
                return;
            }
            let nd = d + w;
            if nd < dist[u] || (nd == dist[u] && h + 1 < hops[u]) {
                dist[u] = nd;
                hops[u] = h + 1;
                heap.push(LexEntry { dist: nd, hops: h + 1, vertex: u });
            }
        });
    }
    (dist, hops)
}

/// Exact all-pairs distances over the masked graph. Among equal-length
/// shortest paths the minimum hop count is reported. Rows run in parallel.
pub fn apsp<W: Scalar>(g: &Graph<W>, mask: Option<&[bool]>) -> DistanceMatrix<W> {
    let n = g.n();
    let adj = Masked::new(g, mask);
    let rows: Vec<(Vec<W>, Vec<u32>)> = (0..n).into_par_iter().map(|s| lex_row(&adj, s)).collect();
    let mut dist = Vec::with_capacity(n * n);
    let mut hops = Vec::with_capacity(n * n);
    for (d, h) in rows {
        dist.extend(d);
        hops.extend(h);
    }
    DistanceMatrix { n, dist, hops }
}
