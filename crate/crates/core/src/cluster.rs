//! Randomized clustering spanner for odd stretch `2k - 1`.
//!
//! Phase one runs `k - 1` rounds. Each round samples the current clusters
//! with probability `n^(-1/k)`; every vertex of an unsampled cluster then
//! either joins its nearest sampled neighbor cluster or, when it has none,
//! connects to every neighboring cluster and drops out. The nearest-cluster
//! lookup and the edge additions happen in one scan per vertex. Phase two
//! joins every vertex to each adjacent surviving cluster.
//!
//! Edges are pruned from the working set as soon as they are accounted for,
//! so the algorithm never computes a distance.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::{Graph, Spanner};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("clustering spanner needs an odd stretch of at least 3, got {0}")]
pub struct InvalidOddStretch(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsConfig {
    alpha: u32,
    pub seed: u64,
}

impl BsConfig {
    pub fn new(alpha: u32, seed: u64) -> Result<Self, InvalidOddStretch> {
        if alpha < 3 || alpha.is_multiple_of(2) {
            return Err(InvalidOddStretch(alpha));
        }
        Ok(BsConfig { alpha, seed })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn k(&self) -> u32 {
        self.alpha.div_ceil(2)
    }
}

/// Cluster membership for one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    /// Cluster center per vertex, `None` once a vertex dropped out.
    pub center: Vec<Option<usize>>,
    /// Sampling outcome per center for the current round.
    pub sampled: Vec<bool>,
}

// Lightest edge from the scanned vertex into one cluster.
#[derive(Debug, Clone, Copy)]
struct Lightest<W> {
    weight: W,
    neighbor: usize,
    edge: usize,
}

impl<W: Scalar> Lightest<W> {
    fn lighter_than(&self, other: &Self) -> bool {
        match self.weight.partial_cmp(&other.weight).unwrap_or(Ordering::Equal) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.neighbor < other.neighbor,
        }
    }
}

struct Scan<W> {
    best: Vec<Option<Lightest<W>>>,
    drop: Vec<bool>,
    touched: Vec<usize>,
}

impl<W: Scalar> Scan<W> {
    fn new(n: usize) -> Self {
        Scan { best: vec![None; n], drop: vec![false; n], touched: Vec::new() }
    }

    fn clear(&mut self) {
        for &c in &self.touched {
            self.best[c] = None;
            self.drop[c] = false;
        }
        self.touched.clear();
    }

    // Groups the live edges of `v` by the neighbor's cluster.
    fn collect(&mut self, g: &Graph<W>, alive: &[bool], center: &[Option<usize>], v: usize) {
        self.clear();
        let own = center[v];
        for &(u, e) in g.neighbors(v) {
            if !alive[e] {
                continue;
            }
            let Some(c) = center[u] else { continue };
            if Some(c) == own {
                continue;
            }
            let cand = Lightest { weight: g.weight(e), neighbor: u, edge: e };
            match &self.best[c] {
                None => {
                    self.best[c] = Some(cand);
                    self.touched.push(c);
                }
                Some(cur) if cand.lighter_than(cur) => self.best[c] = Some(cand),
                Some(_) => {}
            }
        }
    }

    // Kills every live edge of `v` into a cluster marked for dropping.
    fn drop_marked(&self, g: &Graph<W>, alive: &mut [bool], center: &[Option<usize>], v: usize) {
        for &(u, e) in g.neighbors(v) {
            if alive[e] && center[u].is_some_and(|c| self.drop[c]) {
                alive[e] = false;
            }
        }
    }
}

pub fn baswana_sen<'g, W: Scalar>(g: &'g Graph<W>, cfg: &BsConfig) -> Spanner<'g, W> {
    baswana_sen_until(g, cfg, &Deadline::never()).expect("no deadline")
}

pub fn baswana_sen_until<'g, W: Scalar>(
    g: &'g Graph<W>,
    cfg: &BsConfig,
    deadline: &Deadline,
) -> Result<Spanner<'g, W>, Cancelled> {
    let n = g.n();
    let k = cfg.k();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let p = (n.max(1) as f64).powf(-1.0 / k as f64);
    let mut spanner = Spanner::empty(g, cfg.alpha as f64);
    let mut alive = vec![true; g.m()];
    let mut clustering = Clustering { center: (0..n).map(Some).collect(), sampled: vec![false; n] };
    let mut scan = Scan::new(n);

    for _round in 1..k {
        deadline.check()?;
        clustering.sampled.iter_mut().for_each(|s| *s = false);
        let mut is_center = vec![false; n];
        for c in clustering.center.iter().flatten() {
            is_center[*c] = true;
        }
        for c in 0..n {
            if is_center[c] {
                clustering.sampled[c] = rng.gen::<f64>() < p;
            }
        }
        let old = clustering.center.clone();
        let mut next: Vec<Option<usize>> =
            old.iter().map(|c| c.filter(|&c| clustering.sampled[c])).collect();

        for v in 0..n {
            let Some(own) = old[v] else { continue };
            if clustering.sampled[own] {
                continue;
            }
            deadline.check()?;
            scan.collect(g, &alive, &old, v);
            let nearest = scan
                .touched
                .iter()
                .filter(|&&c| clustering.sampled[c])
                .map(|&c| (c, scan.best[c].unwrap()))
                .reduce(|a, b| if b.1.lighter_than(&a.1) { b } else { a });
            match nearest {
                Some((joined, via)) => {
                    spanner.insert(via.edge);
                    next[v] = Some(joined);
                    scan.drop[joined] = true;
                    for i in 0..scan.touched.len() {
                        let c = scan.touched[i];
                        let b = scan.best[c].unwrap();
                        if b.weight < via.weight {
                            spanner.insert(b.edge);
                            scan.drop[c] = true;
                        }
                    }
                }
                None => {
                    for i in 0..scan.touched.len() {
                        let c = scan.touched[i];
                        spanner.insert(scan.best[c].unwrap().edge);
                        scan.drop[c] = true;
                    }
                }
            }
            scan.drop_marked(g, &mut alive, &old, v);
        }

        for (e, edge) in g.edges().iter().enumerate() {
            if alive[e] {
                match (next[edge.u], next[edge.v]) {
                    (Some(a), Some(b)) if a != b => {}
                    _ => alive[e] = false,
                }
            }
        }
        clustering.center = next;
    }

    deadline.check()?;
    let center = clustering.center;
    for v in 0..n {
        scan.collect(g, &alive, &center, v);
        for i in 0..scan.touched.len() {
            let c = scan.touched[i];
            spanner.insert(scan.best[c].unwrap().edge);
            scan.drop[c] = true;
        }
        scan.drop_marked(g, &mut alive, &center, v);
    }
    Ok(spanner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::paths::traversal_count;
    use crate::graph::validate::validate_spanner;
    use crate::Graph64;

    fn complete(n: usize) -> Graph64 {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph64::unweighted(n, edges).unwrap()
    }

    #[test]
    fn config_requires_odd_stretch() {
        assert!(BsConfig::new(2, 0).is_err());
        assert!(BsConfig::new(1, 0).is_err());
        assert!(BsConfig::new(4, 0).is_err());
        assert_eq!(BsConfig::new(7, 0).unwrap().k(), 4);
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph64::unweighted(6, []).unwrap();
        assert_eq!(baswana_sen(&g, &BsConfig::new(3, 1).unwrap()).size(), 0);
    }

    #[test]
    fn random_trees_survive_whole() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for seed in 0..50 {
            let n = rng.gen_range(2..=50);
            let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v, rng.gen_range(1..=9) as f64)).collect();
            let g = Graph64::weighted(n, edges).unwrap();
            for graph in [g.clone(), g.without_weights()] {
                let h = baswana_sen(&graph, &BsConfig::new(3, seed).unwrap());
                assert_eq!(h.size(), n - 1);
                assert!(validate_spanner(&h).valid);
            }
        }
    }

    #[test]
    fn k20_size_within_bound() {
        let g = complete(20);
        let cfg_alpha = 3;
        let bound = 2.0 * 20f64.powf(1.5);
        let mut total = 0usize;
        let runs = 1000;
        for seed in 0..runs {
            let h = baswana_sen(&g, &BsConfig::new(cfg_alpha, seed).unwrap());
            if seed % 50 == 0 {
                assert!(validate_spanner(&h).valid);
            }
            total += h.size();
        }
        let mean = total as f64 / runs as f64;
        assert!(mean <= bound, "mean size {mean} exceeds {bound}");
    }

    #[test]
    fn no_distance_computations() {
        let g = complete(15);
        let before = traversal_count();
        baswana_sen(&g, &BsConfig::new(5, 3).unwrap());
        assert_eq!(traversal_count(), before);
    }

    #[test]
    fn deterministic_per_seed() {
        let g = complete(25);
        let cfg = BsConfig::new(5, 77).unwrap();
        assert_eq!(baswana_sen(&g, &cfg).mask(), baswana_sen(&g, &cfg).mask());
    }
}
