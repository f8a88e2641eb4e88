//! Local graphs, thick/thin classification, settledness and minimal
//! antispanners.

use rand::Rng;
use thiserror::Error;

use super::arborescence::ArborescencePair;
use super::{ArcView, DiGraph};
use crate::graph::paths::DijkstraScratch;
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AntispannerError {
    #[error("arc {arc} is already settled")]
    AlreadySettled { arc: usize },
}

/// Arc set whose removal leaves no short path for `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antispanner {
    pub target: usize,
    /// Arc ids in ascending order.
    pub arcs: Vec<usize>,
    pub minimal: bool,
}

/// `alpha * d_G(s, t)` for arc `(s, t)`.
pub fn stretch_bound<W: Scalar>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], arc: usize, alpha: W) -> W {
    let (s, t) = g.arc(arc);
    alpha * arbs[s].d_out[t]
}

/// Vertices on some `s`-`t` walk of length at most `alpha * d_G(s, t)`.
pub fn local_vertices<W: Scalar>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], arc: usize, alpha: W) -> Vec<usize> {
    let (s, t) = g.arc(arc);
    let limit = stretch_bound(g, arbs, arc, alpha);
    (0..g.n()).filter(|&x| arbs[s].d_out[x] + arbs[t].d_in[x] <= limit).collect()
}

/// Arcs of the local graph: `d_out(s, u) + w(u, v) + d_in(t, v) <= alpha * d_G(s, t)`.
pub fn local_arcs<W: Scalar>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], arc: usize, alpha: W) -> Vec<usize> {
    let (s, t) = g.arc(arc);
    let limit = stretch_bound(g, arbs, arc, alpha);
    let mut arcs = Vec::new();
    // the tail of every local arc is itself a local vertex
    for u in local_vertices(g, arbs, arc, alpha) {
        for &(v, a) in g.out_arcs(u) {
            if arbs[s].d_out[u] + g.weight(a) + arbs[t].d_in[v] <= limit {
                arcs.push(a);
            }
        }
    }
    arcs.sort_unstable();
    arcs
}

/// `true` for thick arcs, those whose local graph has at least `sqrt(n)` vertices.
pub fn classify_arcs<W: Scalar>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], alpha: W) -> Vec<bool> {
    let n = g.n();
    (0..g.arc_count())
        .map(|a| {
            let (s, t) = g.arc(a);
            let limit = stretch_bound(g, arbs, a, alpha);
            let count = (0..n).filter(|&x| arbs[s].d_out[x] + arbs[t].d_in[x] <= limit).count();
            count * count >= n
        })
        .collect()
}

/// Number of sampled roots for `n` vertices: `ceil(3 sqrt(n) ln n)`.
pub fn sample_size(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let n = n as f64;
    (3.0 * n.sqrt() * n.ln()).ceil() as usize
}

/// Union of the in- and out-arborescences of sampled roots. When the sample
/// size reaches `n`, every root is taken.
pub fn sample_thick_cover<W: Scalar, R: Rng>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], rng: &mut R) -> Vec<bool> {
    let n = g.n();
    let mut cover = vec![false; g.arc_count()];
    let count = sample_size(n);
    let roots: Vec<usize> = if count >= n { (0..n).collect() } else { (0..count).map(|_| rng.gen_range(0..n)).collect() };
    for r in roots {
        for a in arbs[r].arcs() {
            cover[a] = true;
        }
    }
    cover
}

/// Reusable settledness checker.
pub struct Settler<W> {
    scratch: DijkstraScratch<W>,
}

impl<W: Scalar> Settler<W> {
    pub fn new(n: usize) -> Self {
        Settler { scratch: DijkstraScratch::new(n) }
    }

    /// Whether the arcs in `mask` connect the ends of `arc` within `bound`.
    pub fn connects(&mut self, g: &DiGraph<W>, mask: &[bool], arc: usize, bound: W) -> bool {
        let (s, t) = g.arc(arc);
        let view = ArcView { graph: g, mask: Some(mask), reverse: false };
        self.scratch.run(&view, s, bound, Some(t)) <= bound
    }

    pub fn is_settled(
        &mut self,
        g: &DiGraph<W>,
        arbs: &[ArborescencePair<W>],
        r: &[bool],
        arc: usize,
        alpha: W,
    ) -> bool {
        self.connects(g, r, arc, stretch_bound(g, arbs, arc, alpha))
    }
}

/// Whether `r` contains an `s`-`t` path of length at most `alpha * d_G(s, t)` for arc `(s, t)`.
pub fn is_settled<W: Scalar>(g: &DiGraph<W>, arbs: &[ArborescencePair<W>], r: &[bool], arc: usize, alpha: W) -> bool {
    Settler::new(g.n()).is_settled(g, arbs, r, arc, alpha)
}

/// Minimal antispanner for an arc that `r` does not settle.
///
/// Starts from the local arcs outside `r` and drops arcs in ascending id
/// order as long as the target stays unsettled without them.
pub fn build_min_antispanner<W: Scalar>(
    g: &DiGraph<W>,
    arbs: &[ArborescencePair<W>],
    r: &[bool],
    arc: usize,
    alpha: W,
) -> Result<Antispanner, AntispannerError> {
    build_with(&mut Settler::new(g.n()), g, arbs, r, arc, alpha)
}

pub(crate) fn build_with<W: Scalar>(
    settler: &mut Settler<W>,
    g: &DiGraph<W>,
    arbs: &[ArborescencePair<W>],
    r: &[bool],
    arc: usize,
    alpha: W,
) -> Result<Antispanner, AntispannerError> {
    let bound = stretch_bound(g, arbs, arc, alpha);
    let local = local_arcs(g, arbs, arc, alpha);
    // available = local arcs not in the antispanner
    let mut available = vec![false; g.arc_count()];
    let mut candidates = Vec::new();
    for &a in &local {
        if r[a] {
            available[a] = true;
        } else {
            candidates.push(a);
        }
    }
    if settler.connects(g, &available, arc, bound) {
        return Err(AntispannerError::AlreadySettled { arc });
    }
    let mut arcs = Vec::with_capacity(candidates.len());
    for a in candidates {
        available[a] = true;
        if settler.connects(g, &available, arc, bound) {
            available[a] = false;
            arcs.push(a);
        }
    }
    Ok(Antispanner { target: arc, arcs, minimal: true })
}
