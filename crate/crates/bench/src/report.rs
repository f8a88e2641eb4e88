//! Aggregation of run records into per-algorithm summary tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use spanner_core::Algorithm;

use crate::record::{Outcome, RunRecord};

/// Solved share and mean solve time of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvedRow {
    pub algorithm: Algorithm,
    pub weighted: bool,
    pub runs: usize,
    pub solved: usize,
    pub timeouts: usize,
    pub failed: usize,
    pub solved_pct: f64,
    /// Mean wall time over solved runs, `None` without timing data.
    pub mean_wall_ms: Option<f64>,
}

/// Mean quality of one algorithm at one stretch over its solved runs.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityRow {
    pub algorithm: Algorithm,
    pub alpha: f64,
    pub weighted: bool,
    pub solved: usize,
    pub size: f64,
    pub sparseness: f64,
    pub lightness: f64,
    pub lightness_max: f64,
    pub mean_degree: f64,
    pub stretch_mean: f64,
    /// Mean of per-instance maximum stretches.
    pub stretch_mean_max: f64,
    pub stretch_max: f64,
    pub hop_mean_diff: f64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    sum / count as f64
}

pub fn solved_table(records: &[RunRecord]) -> Vec<SolvedRow> {
    let mut groups: BTreeMap<(Algorithm, bool), Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.algorithm, r.weighted)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((algorithm, weighted), rs)| {
            let count = |o| rs.iter().filter(|r| r.outcome == o).count();
            let solved = count(Outcome::Solved);
            let times: Vec<f64> = rs.iter().filter(|r| r.outcome == Outcome::Solved).filter_map(|r| r.wall_ms).collect();
            SolvedRow {
                algorithm,
                weighted,
                runs: rs.len(),
                solved,
                timeouts: count(Outcome::Timeout),
                failed: count(Outcome::Failed),
                solved_pct: 100.0 * solved as f64 / rs.len() as f64,
                mean_wall_ms: (!times.is_empty()).then(|| mean(times.iter().copied())),
            }
        })
        .collect()
}

pub fn quality_table(records: &[RunRecord]) -> Vec<QualityRow> {
    let mut groups: BTreeMap<(Algorithm, u64, bool), Vec<&RunRecord>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.quality.is_some()) {
        groups.entry((r.algorithm, r.alpha.to_bits(), r.weighted)).or_default().push(r);
    }
    let mut rows: Vec<QualityRow> = groups
        .into_iter()
        .map(|((algorithm, alpha, weighted), rs)| {
            let qs: Vec<_> = rs.iter().filter_map(|r| r.quality.as_ref()).collect();
            QualityRow {
                algorithm,
                alpha: f64::from_bits(alpha),
                weighted,
                solved: qs.len(),
                size: mean(qs.iter().map(|q| q.size as f64)),
                sparseness: mean(qs.iter().map(|q| q.sparseness)),
                lightness: mean(qs.iter().map(|q| q.lightness)),
                lightness_max: qs.iter().map(|q| q.lightness).fold(f64::NEG_INFINITY, f64::max),
                mean_degree: mean(qs.iter().map(|q| q.mean_degree)),
                stretch_mean: mean(qs.iter().map(|q| q.stretch_mean)),
                stretch_mean_max: mean(qs.iter().map(|q| q.stretch_max)),
                stretch_max: qs.iter().map(|q| q.stretch_max).fold(f64::NEG_INFINITY, f64::max),
                hop_mean_diff: mean(qs.iter().map(|q| q.hop_mean_diff)),
            }
        })
        .collect();
    rows.sort_by(|a, b| (a.weighted, a.alpha, a.algorithm).partial_cmp(&(b.weighted, b.alpha, b.algorithm)).unwrap());
    rows
}

fn weighting(w: bool) -> &'static str {
    if w {
        "weighted"
    } else {
        "unweighted"
    }
}

/// Plain-text rendering of both tables.
pub fn render(solved: &[SolvedRow], quality: &[QualityRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{:<8} {:<10} {:>6} {:>6} {:>8} {:>6} {:>8} {:>12}", "algo", "weights", "runs", "solved", "timeout", "failed", "solved%", "mean_ms").unwrap();
    for r in solved {
        let ms = r.mean_wall_ms.map_or_else(|| "-".to_string(), |t| format!("{t:.3}"));
        writeln!(
            out,
            "{:<8} {:<10} {:>6} {:>6} {:>8} {:>6} {:>8.1} {:>12}",
            r.algorithm.name(),
            weighting(r.weighted),
            r.runs,
            r.solved,
            r.timeouts,
            r.failed,
            r.solved_pct,
            ms
        )
        .unwrap();
    }
    out.push('\n');
    writeln!(
        out,
        "{:<8} {:>5} {:<10} {:>6} {:>9} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "algo", "alpha", "weights", "solved", "size", "sparse", "light", "light_mx", "degree", "str_mean", "str_mmax", "str_max", "hop_diff"
    )
    .unwrap();
    for r in quality {
        writeln!(
            out,
            "{:<8} {:>5} {:<10} {:>6} {:>9.1} {:>8.4} {:>8.4} {:>8.4} {:>8.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            r.algorithm.name(),
            r.alpha,
            weighting(r.weighted),
            r.solved,
            r.size,
            r.sparseness,
            r.lightness,
            r.lightness_max,
            r.mean_degree,
            r.stretch_mean,
            r.stretch_mean_max,
            r.stretch_max,
            r.hop_mean_diff
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Quality;

    fn record(algorithm: Algorithm, outcome: Outcome, size: usize, ms: f64) -> RunRecord {
        let solved = outcome == Outcome::Solved;
        RunRecord {
            instance: "g".into(),
            algorithm,
            alpha: 3.0,
            weighted: false,
            seed: 0,
            outcome,
            wall_ms: Some(ms),
            quality: solved.then(|| Quality {
                size,
                sparseness: size as f64 / 10.0,
                lightness: 1.0,
                mean_degree: 1.0,
                stretch_mean: 1.5,
                stretch_max: 3.0,
                hop_mean_diff: 0.0,
            }),
            attempts: solved.then_some(1),
        }
    }

    #[test]
    fn solved_share_and_mean_time_over_solved_runs() {
        let rs = [
            record(Algorithm::Bs, Outcome::Solved, 4, 2.0),
            record(Algorithm::Bs, Outcome::Solved, 6, 4.0),
            record(Algorithm::Bs, Outcome::Timeout, 0, 100.0),
            record(Algorithm::Bs, Outcome::Failed, 0, 1.0),
        ];
        let t = solved_table(&rs);
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].runs, t[0].solved, t[0].timeouts, t[0].failed), (4, 2, 1, 1));
        assert_eq!(t[0].solved_pct, 50.0);
        assert_eq!(t[0].mean_wall_ms, Some(3.0));
        let q = quality_table(&rs);
        assert_eq!(q.len(), 1);
        assert_eq!((q[0].solved, q[0].size, q[0].sparseness), (2, 5.0, 0.5));
        assert_eq!((q[0].stretch_mean_max, q[0].stretch_max), (3.0, 3.0));
        assert!(render(&t, &q).contains("bs"));
    }

    #[test]
    fn groups_by_algorithm_and_stretch() {
        let mut rs = vec![record(Algorithm::Addjs, Outcome::Solved, 3, 1.0), record(Algorithm::Bs, Outcome::Solved, 5, 1.0)];
        rs.push(RunRecord { alpha: 5.0, ..record(Algorithm::Bs, Outcome::Solved, 4, 1.0) });
        let q = quality_table(&rs);
        let keys: Vec<_> = q.iter().map(|r| (r.algorithm, r.alpha)).collect();
        assert_eq!(keys, [(Algorithm::Addjs, 3.0), (Algorithm::Bs, 3.0), (Algorithm::Bs, 5.0)]);
    }
}
