//! Maximum density subgraph by binary search over minimum cuts.

use thiserror::Error;

use super::flow::{max_flow, FlowNetwork, PushRelabelOptions};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("densest subgraph of an empty vertex set")]
    EmptyView,
}

/// Vertex subset with its induced edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSubgraph {
    pub vertices: Vec<usize>,
    pub edges: usize,
}

impl DenseSubgraph {
    pub fn density(&self) -> f64 {
        self.edges as f64 / self.vertices.len() as f64
    }
}

fn induced_edges(members: &[bool], edges: &[(usize, usize)]) -> usize {
    edges.iter().filter(|&&(u, v)| members[u] && members[v]).count()
}

// Source side of the min cut for a density guess, minus the source.
fn cut_side<W: Scalar>(n: usize, edges: &[(usize, usize)], degree: &[usize], guess: W) -> Vec<bool> {
    let m = W::of(edges.len() as f64);
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for v in 0..n {
        net.add_arc(s, v, m);
        let to_sink = m + guess + guess - W::of(degree[v] as f64);
        net.add_arc(v, t, to_sink.max(W::zero()));
    }
    for &(u, v) in edges {
        net.add_arc(u, v, W::one());
        net.add_arc(v, u, W::one());
    }
    let mut side = max_flow(&net, s, t, PushRelabelOptions::default()).source_side;
    side.truncate(n);
    side
}

/// Densest vertex subset of the graph on `0..n` with the given edges.
///
/// Binary search on the density guess `g` over `[0, m]` until the interval
/// is narrower than `1/(n(n-1))`. Each step builds the network with arcs
/// `s -> v` of capacity `m`, `v -> t` of capacity `m + 2g - deg(v)` and unit
/// arcs in both directions per edge; a nonempty source side certifies a
/// subgraph denser than `g`.
pub fn max_density_subgraph<W: Scalar>(n: usize, edges: &[(usize, usize)]) -> Result<DenseSubgraph, DensityError> {
    if n == 0 {
        return Err(DensityError::EmptyView);
    }
    if edges.is_empty() {
        return Ok(DenseSubgraph { vertices: vec![0], edges: 0 });
    }
    let mut degree = vec![0usize; n];
    for &(u, v) in edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let resolution = W::one() / W::of((n * (n - 1)) as f64);
    let two = W::of(2.0);
    let (mut lo, mut hi) = (W::zero(), W::of(edges.len() as f64));
    let mut best: Option<Vec<bool>> = None;
    while hi - lo >= resolution {
        let guess = (lo + hi) / two;
        let side = cut_side(n, edges, &degree, guess);
        if side.iter().any(|&b| b) {
            lo = guess;
            best = Some(side);
        } else {
            hi = guess;
        }
    }
    let side = best.unwrap_or_else(|| cut_side(n, edges, &degree, lo));
    let vertices: Vec<usize> = (0..n).filter(|&v| side[v]).collect();
    Ok(DenseSubgraph { edges: induced_edges(&side, edges), vertices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute_force(n: usize, edges: &[(usize, usize)]) -> f64 {
        let mut best = 0.0f64;
        for mask in 1u32..(1 << n) {
            let members: Vec<bool> = (0..n).map(|v| mask & (1 << v) != 0).collect();
            let d = induced_edges(&members, edges) as f64 / mask.count_ones() as f64;
            best = best.max(d);
        }
        best
    }

    #[test]
    fn triangle() {
        let d = max_density_subgraph::<f64>(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(d.vertices, vec![0, 1, 2]);
        assert_eq!(d.density(), 1.0);
    }

    #[test]
    fn k4_with_pendant() {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)];
        let d = max_density_subgraph::<f64>(5, &edges).unwrap();
        assert_eq!(d.vertices, vec![0, 1, 2, 3]);
        assert_eq!(d.density(), 1.5);
    }

    #[test]
    fn empty_view() {
        assert_eq!(max_density_subgraph::<f64>(0, &[]), Err(DensityError::EmptyView));
        assert_eq!(max_density_subgraph::<f64>(3, &[]).unwrap().edges, 0);
    }

    #[test]
    fn matches_subset_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.9);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let got = max_density_subgraph::<f64>(n, &edges).unwrap();
            let opt = brute_force(n, &edges);
            let tol = if n > 1 { 1.0 / (n * (n - 1)) as f64 } else { 0.0 };
            assert!((got.density() - opt).abs() <= tol, "n={n} got {} want {opt}", got.density());
        }
    }
}
