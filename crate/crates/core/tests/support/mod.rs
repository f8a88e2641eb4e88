//! Independent reference implementations shared by the integration suites.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanner_core::instances::{gen_er, ErSpec};
use spanner_core::Graph64;

/// All-pairs distances by Floyd–Warshall over an explicit edge list.
pub fn floyd(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for &(u, v, w) in edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn edge_list(g: &Graph64) -> Vec<(usize, usize, f64)> {
    (0..g.m()).map(|e| (g.edge(e).u, g.edge(e).v, g.weight(e))).collect()
}

fn subset_is_spanner(n: usize, edges: &[(usize, usize, f64)], bits: u64, alpha: f64) -> bool {
    let chosen: Vec<_> = edges.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &e)| e).collect();
    let d = floyd(n, &chosen);
    edges.iter().all(|&(u, v, w)| d[u][v] <= alpha * w * (1.0 + 1e-9))
}

/// Size of a sparsest `alpha`-spanner by exhaustive search over edge subsets
/// in order of increasing cardinality.
pub fn sparsest_spanner_size(g: &Graph64, alpha: f64) -> usize {
    let edges = edge_list(g);
    let m = edges.len();
    assert!(m < 64, "brute force needs fewer than 64 edges");
    for size in 0..=m {
        if size == 0 {
            if subset_is_spanner(g.n(), &edges, 0, alpha) {
                return 0;
            }
            continue;
        }
        let mut bits: u64 = (1 << size) - 1;
        while bits < 1 << m {
            if subset_is_spanner(g.n(), &edges, bits, alpha) {
                return size;
            }
            let low = bits & bits.wrapping_neg();
            let ripple = bits + low;
            bits = (((ripple ^ bits) >> 2) / low) | ripple;
        }
    }
    m
}

// Edge masks of the simple `u`-`v` paths of length at most `limit` that avoid edge `skip`.
fn short_paths(n: usize, edges: &[(usize, usize, f64)], u: usize, v: usize, limit: f64, skip: usize) -> Vec<u64> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b, w)) in edges.iter().enumerate() {
        if i != skip {
            adj[a].push((b, i, w));
            adj[b].push((a, i, w));
        }
    }
    let mut out = Vec::new();
    let mut stack = vec![(u, 1u32 << u, 0u64, 0.0)];
    while let Some((x, seen, mask, len)) = stack.pop() {
        if x == v {
            out.push(mask);
            continue;
        }
        for &(y, i, w) in &adj[x] {
            if seen >> y & 1 == 0 && len + w <= limit {
                stack.push((y, seen | 1 << y, mask | 1 << i, len + w));
            }
        }
    }
    out
}

struct Cover {
    paths: Vec<Vec<u64>>,
    floor: usize,
    best: usize,
}

impl Cover {
    fn search(&mut self, h: u64, forbidden: u64) {
        let size = h.count_ones() as usize;
        if size >= self.best || self.best == self.floor {
            return;
        }
        let open = (0..self.paths.len()).find(|&e| h >> e & 1 == 0 && !self.paths[e].iter().any(|&p| p & !h == 0));
        let Some(e) = open else {
            self.best = size;
            return;
        };
        if forbidden >> e & 1 == 0 {
            self.search(h | 1 << e, forbidden);
        }
        let forbidden = forbidden | 1 << e;
        for i in 0..self.paths[e].len() {
            let p = self.paths[e][i];
            if p & forbidden == 0 {
                self.search(h | p, forbidden);
            }
        }
    }
}

/// Size of a sparsest `alpha`-spanner by branch and bound: every edge is
/// either kept or replaced by a kept path of length at most `alpha` times
/// its weight, which is equivalent to the all-pairs condition.
pub fn sparsest_spanner_size_bnb(g: &Graph64, alpha: f64) -> usize {
    let edges = edge_list(g);
    assert!(edges.len() < 64, "branch and bound needs fewer than 64 edges");
    let paths = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v, w))| short_paths(g.n(), &edges, u, v, alpha * w * (1.0 + 1e-9), i))
        .collect();
    let floor = g.n() - spanner_core::components(g).count;
    let mut cover = Cover { paths, floor, best: edges.len() + 1 };
    cover.search(0, 0);
    cover.best.min(edges.len())
}

/// Maximum flow by shortest augmenting paths on a capacity matrix.
pub fn edmonds_karp(n: usize, arcs: &[(usize, usize, f64)], s: usize, t: usize) -> f64 {
    let mut cap = vec![vec![0.0; n]; n];
    for &(u, v, c) in arcs {
        cap[u][v] += c;
    }
    let mut total = 0.0;
    loop {
        let mut prev = vec![usize::MAX; n];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u][v] > 0.0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return total;
        }
        let mut push = f64::INFINITY;
        let mut v = t;
        while v != s {
            push = push.min(cap[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            cap[prev[v]][v] -= push;
            cap[v][prev[v]] += push;
            v = prev[v];
        }
        total += push;
    }
}

/// Largest `|E(S)| / |S|` over all nonempty vertex subsets.
pub fn densest_exhaustive(n: usize, edges: &[(usize, usize)]) -> f64 {
    (1u32..1 << n)
        .map(|s| {
            let inside = edges.iter().filter(|&&(u, v)| s >> u & 1 == 1 && s >> v & 1 == 1).count();
            inside as f64 / s.count_ones() as f64
        })
        .fold(0.0, f64::max)
}

fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let f = a[row][col] / a[col][col];
                if f != 0.0 {
                    for k in col..n {
                        a[row][k] -= f * a[col][k];
                    }
                    b[row] -= f * b[col];
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

/// Optimum of `min sum x` subject to one `>= 1` covering row per entry of
/// `rows` and `x >= 0`, by enumerating every basic solution.
pub fn covering_lp_by_vertices(num_vars: usize, rows: &[Vec<usize>]) -> f64 {
    let mut constraints: Vec<(Vec<f64>, f64)> = rows
        .iter()
        .map(|r| {
            let mut a = vec![0.0; num_vars];
            for &j in r {
                a[j] = 1.0;
            }
            (a, 1.0)
        })
        .collect();
    for j in 0..num_vars {
        let mut a = vec![0.0; num_vars];
        a[j] = 1.0;
        constraints.push((a, 0.0));
    }
    let total = constraints.len();
    let mut best = f64::INFINITY;
    let mut pick: Vec<usize> = (0..num_vars).collect();
    loop {
        let a = pick.iter().map(|&i| constraints[i].0.clone()).collect();
        let b = pick.iter().map(|&i| constraints[i].1).collect();
        if let Some(x) = solve_square(a, b) {
            let feasible = constraints.iter().all(|(a, b)| a.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() >= b - 1e-9);
            if feasible {
                best = best.min(x.iter().sum());
            }
        }
        let Some(i) = (0..num_vars).rev().find(|&i| pick[i] < total - num_vars + i) else {
            return best;
        };
        pick[i] += 1;
        for j in i + 1..num_vars {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

pub fn complete(n: usize) -> Graph64 {
    Graph64::unweighted(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn cycle(n: usize) -> Graph64 {
    Graph64::unweighted(n, (0..n).map(|u| (u, (u + 1) % n))).unwrap()
}

/// Uniform random recursive tree.
pub fn tree(n: usize, seed: u64) -> Graph64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph64::unweighted(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap()
}

/// Attaches integer weights in `1..=n` to every edge.
pub fn weigh(g: &Graph64, seed: u64) -> Graph64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.with_weights((0..g.m()).map(|_| rng.gen_range(1..=g.n()) as f64).collect()).unwrap()
}

pub const RHOS: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// `count` ER graphs cycling through `sizes` and every relative density.
pub fn er_corpus(sizes: &[usize], count: usize, weighted: bool) -> Vec<(String, Graph64)> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let rho = RHOS[i / sizes.len() % RHOS.len()];
            let spec = ErSpec { n, rel_density: rho, weighted, seed: i as u64 };
            (format!("er_n{n}_r{rho}_s{i}"), gen_er(&spec).unwrap())
        })
        .collect()
}

/// Twenty trees, twenty cycles and five complete graphs.
pub fn structured_corpus() -> Vec<(String, Graph64)> {
    const SIZES: [usize; 20] = [4, 5, 6, 7, 8, 10, 12, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100, 100, 100];
    let mut out = Vec::new();
    for (i, n) in SIZES.into_iter().enumerate() {
        out.push((format!("tree_{n}_{i}"), tree(n, i as u64)));
        out.push((format!("cycle_{n}_{i}"), cycle(n)));
    }
    for n in [5, 6, 7, 8, 10] {
        out.push((format!("complete_{n}"), complete(n)));
    }
    out
}
