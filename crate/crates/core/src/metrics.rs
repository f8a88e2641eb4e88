//! Quality measures of a spanner against its parent graph.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::paths::{apsp, DistanceMatrix};
use crate::graph::{components, mst_weight, Spanner};
use crate::Scalar;

/// Measures of one (graph, spanner) pair. Stretch and hop statistics run
/// over unordered pairs at finite positive distance in the graph.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    pub size: usize,
    /// `|E'| / |E|`, 1 for an edgeless graph.
    pub sparseness: f64,
    /// `W(E') / W(MSF(G))`; on unweighted graphs `|E'| / (n - c)`.
    pub lightness: f64,
    pub mean_degree_spanner: f64,
    pub mean_degree_original: f64,
    pub stretch_mean: f64,
    pub stretch_max: f64,
    pub pairs: usize,
    pub hops_fewer: f64,
    pub hops_equal: f64,
    pub hops_more: f64,
    pub hop_mean_diff: f64,
}

/// Measures `h` against its parent, computing both APSP tables.
pub fn measure<W: Scalar>(h: &Spanner<'_, W>) -> QualityReport {
    measure_against(&apsp(h.parent(), None), h)
}

/// Measures `h` given the parent's APSP table.
pub fn measure_against<W: Scalar>(original: &DistanceMatrix<W>, h: &Spanner<'_, W>) -> QualityReport {
    let g = h.parent();
    let n = g.n();
    let size = h.size();
    let sparseness = if g.m() == 0 { 1.0 } else { size as f64 / g.m() as f64 };
    let lightness = if g.is_weighted() {
        let forest = mst_weight(g).to_f64_lossy();
        if forest > 0.0 {
            h.weight().to_f64_lossy() / forest
        } else {
            1.0
        }
    } else {
        let forest = n - components(g).count;
        if forest > 0 {
            size as f64 / forest as f64
        } else {
            1.0
        }
    };
    let degree = |edges: usize| if n == 0 { 0.0 } else { 2.0 * edges as f64 / n as f64 };

    let spanner = apsp(g, Some(h.mask()));
    let (mut pairs, mut stretch_sum, mut stretch_max) = (0usize, 0.0, 0.0f64);
    let (mut fewer, mut equal, mut more, mut hop_diff) = (0usize, 0usize, 0usize, 0i64);
    for u in 0..n {
        for v in u + 1..n {
            let dg = original.dist(u, v).to_f64_lossy();
            if !(dg > 0.0 && dg.is_finite()) {
                continue;
            }
            let ratio = spanner.dist(u, v).to_f64_lossy() / dg;
            pairs += 1;
            stretch_sum += ratio;
            stretch_max = stretch_max.max(ratio);
            let diff = spanner.hops(u, v) as i64 - original.hops(u, v) as i64;
            hop_diff += diff;
            match diff.signum() {
                -1 => fewer += 1,
                0 => equal += 1,
                _ => more += 1,
            }
        }
    }
    let frac = |count: usize| if pairs == 0 { 0.0 } else { count as f64 / pairs as f64 };
    QualityReport {
        size,
        sparseness,
        lightness,
        mean_degree_spanner: degree(size),
        mean_degree_original: degree(g.m()),
        stretch_mean: if pairs == 0 { 1.0 } else { stretch_sum / pairs as f64 },
        stretch_max: if pairs == 0 { 1.0 } else { stretch_max },
        pairs,
        hops_fewer: frac(fewer),
        hops_equal: frac(equal),
        hops_more: frac(more),
        hop_mean_diff: if pairs == 0 { 0.0 } else { hop_diff as f64 / pairs as f64 },
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("cannot summarize an empty group")]
pub struct EmptyGroup;

/// Moments and order statistics of a sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    /// Sample standard deviation, 0 for a single value.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// Population skewness; 0 when the sample is constant.
    pub skewness: f64,
    /// Population excess kurtosis; 0 when the sample is constant.
    pub excess_kurtosis: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary, EmptyGroup> {
    if values.is_empty() {
        return Err(EmptyGroup);
    }
    let count = values.len();
    let nf = count as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let central = |p: i32| values.iter().map(|x| (x - mean).powi(p)).sum::<f64>() / nf;
    let (m2, m3, m4) = (central(2), central(3), central(4));
    let std = if count > 1 { (m2 * nf / (nf - 1.0)).sqrt() } else { 0.0 };
    let (skewness, excess_kurtosis) = if m2 > 0.0 { (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0) } else { (0.0, 0.0) };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if count % 2 == 1 { sorted[count / 2] } else { (sorted[count / 2 - 1] + sorted[count / 2]) / 2.0 };
    Ok(Summary { count, mean, median, std, min: sorted[0], max: sorted[count - 1], skewness, excess_kurtosis })
}

/// Per-group summaries of the main report fields. `stretch_max.mean` is the
/// mean of per-instance maxima and `stretch_max.max` the overall maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub size: Summary,
    pub sparseness: Summary,
    pub lightness: Summary,
    pub mean_degree: Summary,
    pub stretch_mean: Summary,
    pub stretch_max: Summary,
    pub hop_mean_diff: Summary,
}

impl GroupSummary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a QualityReport>) -> Result<Self, EmptyGroup> {
        let reports: Vec<&QualityReport> = reports.into_iter().collect();
        let field = |f: fn(&QualityReport) -> f64| summarize(&reports.iter().map(|r| f(r)).collect::<Vec<_>>());
        Ok(GroupSummary {
            size: field(|r| r.size as f64)?,
            sparseness: field(|r| r.sparseness)?,
            lightness: field(|r| r.lightness)?,
            mean_degree: field(|r| r.mean_degree_spanner)?,
            stretch_mean: field(|r| r.stretch_mean)?,
            stretch_max: field(|r| r.stretch_max)?,
            hop_mean_diff: field(|r| r.hop_mean_diff)?,
        })
    }
}

/// Groups reports by key and summarizes each group.
pub fn aggregate<'a, K: Ord>(
    items: impl IntoIterator<Item = (K, &'a QualityReport)>,
) -> Result<BTreeMap<K, GroupSummary>, EmptyGroup> {
    let mut groups: BTreeMap<K, Vec<&QualityReport>> = BTreeMap::new();
    for (k, r) in items {
        groups.entry(k).or_default().push(r);
    }
    if groups.is_empty() {
        return Err(EmptyGroup);
    }
    groups.into_iter().map(|(k, rs)| Ok((k, GroupSummary::of(rs)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph64;

    fn k4() -> Graph64 {
        Graph64::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn identity_spanner() {
        let g = k4();
        let r = measure(&Spanner::full(&g, 1.0));
        assert_eq!(r.sparseness, 1.0);
        assert_eq!(r.stretch_mean, 1.0);
        assert_eq!(r.stretch_max, 1.0);
        assert_eq!(r.hop_mean_diff, 0.0);
        assert_eq!(r.hops_equal, 1.0);
    }

    #[test]
    fn k4_star() {
        let g = k4();
        let h = Spanner::from_edges(&g, [0, 1, 2], 2.0);
        let r = measure(&h);
        assert_eq!(r.sparseness, 0.5);
        assert_eq!(r.stretch_max, 2.0);
        assert_eq!(r.stretch_mean, 1.5);
        assert_eq!(r.hop_mean_diff, 0.5);
        assert_eq!(r.mean_degree_spanner, 1.5);
        assert_eq!(r.mean_degree_original, 3.0);
        assert_eq!(r.lightness, 1.0);
    }

    #[test]
    fn forest_has_unit_lightness() {
        let g = Graph64::weighted(5, [(0, 1, 1.0), (1, 2, 2.0), (0, 2, 2.5), (2, 3, 1.0), (3, 4, 3.0), (1, 4, 7.0)]).unwrap();
        let h = Spanner::from_edges(&g, [0, 1, 3, 4], 3.0);
        assert_eq!(measure(&h).lightness, 1.0);
    }

    #[test]
    fn edgeless_conventions() {
        let g = Graph64::unweighted(3, []).unwrap();
        let r = measure(&Spanner::empty(&g, 3.0));
        assert_eq!(r.sparseness, 1.0);
        assert_eq!(r.pairs, 0);
    }

    #[test]
    fn weighted_matches_floyd_warshall() {
        let edges = [(0, 1, 2.0), (1, 2, 2.0), (0, 2, 3.0), (2, 3, 1.0), (3, 4, 4.0), (4, 5, 1.0), (1, 5, 6.0), (0, 5, 9.0)];
        let g = Graph64::weighted(6, edges).unwrap();
        let keep = [0, 1, 3, 4, 5];
        let h = Spanner::from_edges(&g, keep, 3.0);
        let fw = |mask: &[bool]| {
            // (distance, hops) with lexicographic minimum
            let mut d = vec![vec![(f64::INFINITY, 0u32); 6]; 6];
            for (v, row) in d.iter_mut().enumerate() {
                row[v] = (0.0, 0);
            }
            for (e, &(u, v, w)) in edges.iter().enumerate() {
                if mask[e] {
                    d[u][v] = (w, 1);
                    d[v][u] = (w, 1);
                }
            }
            for k in 0..6 {
                for i in 0..6 {
                    for j in 0..6 {
                        let via = (d[i][k].0 + d[k][j].0, d[i][k].1 + d[k][j].1);
                        if via.0 < d[i][j].0 || (via.0 == d[i][j].0 && via.1 < d[i][j].1) {
                            d[i][j] = via;
                        }
                    }
                }
            }
            d
        };
        let all = fw(&[true; 8]);
        let sub = fw(&(0..8).map(|e| keep.contains(&e)).collect::<Vec<_>>());
        let (mut sum, mut max, mut hops) = (0.0, 0.0f64, 0i64);
        for u in 0..6 {
            for v in u + 1..6 {
                let s = sub[u][v].0 / all[u][v].0;
                sum += s;
                max = max.max(s);
                hops += sub[u][v].1 as i64 - all[u][v].1 as i64;
            }
        }
        let r = measure(&h);
        assert!((r.stretch_mean - sum / 15.0).abs() < 1e-12);
        assert_eq!(r.stretch_max, max);
        assert!((r.hop_mean_diff - hops as f64 / 15.0).abs() < 1e-12);
        assert_eq!(r, measure(&h));
    }

    #[test]
    fn summaries() {
        assert_eq!(summarize(&[]), Err(EmptyGroup));
        let one = summarize(&[3.0]).unwrap();
        assert_eq!((one.mean, one.median, one.std, one.min, one.max), (3.0, 3.0, 0.0, 3.0, 3.0));
        let two = summarize(&[2.0, 2.0]).unwrap();
        assert_eq!((two.mean, two.std), (2.0, 0.0));
        let three = summarize(&[1.0, 2.0, 6.0]).unwrap();
        assert_eq!(three.mean, 3.0);
        assert_eq!(three.median, 2.0);
        assert!((three.std - 7f64.sqrt()).abs() < 1e-12);
        assert!(three.skewness > 0.0);
    }

    #[test]
    fn grouping() {
        let g = k4();
        let star = measure(&Spanner::from_edges(&g, [0, 1, 2], 2.0));
        let full = measure(&Spanner::full(&g, 2.0));
        let groups = aggregate([("a", &star), ("b", &full), ("a", &full)]).unwrap();
        assert_eq!(groups.len(), 2);
        assert_eq!(groups["a"].sparseness.mean, 0.75);
        assert_eq!(groups["b"].stretch_max.mean, 1.0);
        assert_eq!(groups["a"].stretch_max.max, 2.0);
        assert_eq!(aggregate(std::iter::empty::<(u8, &QualityReport)>()), Err(EmptyGroup));
        assert_eq!(GroupSummary::of([&star]).unwrap().size.mean, 3.0);
    }
}
