use super::paths::apsp;
use super::Spanner;
use crate::Scalar;

/// Relative slack on `d_H <= alpha * d_G` that absorbs summation-order rounding.
pub const STRETCH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub valid: bool,
    /// Pair with the largest `d_H / d_G` ratio (infinite when disconnected in H only).
    pub worst: Option<(usize, usize, f64)>,
}

/// Checks `d_H(u,v) <= alpha * d_G(u,v)` for all pairs. Pairs that are
/// mutually unreachable in the parent count as satisfied.
pub fn validate_spanner<W: Scalar>(h: &Spanner<'_, W>) -> Validation {
    let g = h.parent();
    let dg = apsp(g, None);
    let dh = apsp(g, Some(h.mask()));
    let alpha = h.alpha();
    let mut valid = true;
    let mut worst: Option<(usize, usize, f64)> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let base = dg.dist(u, v).to_f64_lossy();
            if !base.is_finite() {
                continue;
            }
            let got = dh.dist(u, v).to_f64_lossy();
            let ratio = got / base;
            if got > alpha * base * (1.0 + STRETCH_TOLERANCE) {
                valid = false;
            }
            if worst.is_none_or(|(_, _, r)| ratio > r) {
                worst = Some((u, v, ratio));
            }
        }
    }
    Validation { valid, worst }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Graph64;

    fn c5() -> Graph64 {
        Graph64::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn identity_spanner_is_valid() {
        let g = c5();
        for alpha in [1.0, 1.5, 3.0] {
            let v = validate_spanner(&Spanner::full(&g, alpha));
            assert!(v.valid);
            assert_eq!(v.worst.unwrap().2, 1.0);
        }
    }

    #[test]
    fn c5_minus_edge() {
        let g = c5();
        let h = Spanner::from_edges(&g, 0..4, 3.0);
        let v = validate_spanner(&h);
        assert!(!v.valid);
        let (a, b, r) = v.worst.unwrap();
        assert_eq!((a, b), (0, 4));
        assert_eq!(r, 4.0);
        assert!(validate_spanner(&Spanner::from_edges(&g, 0..4, 5.0)).valid);
        assert!(validate_spanner(&Spanner::from_edges(&g, 0..4, 4.0)).valid);
    }

    #[test]
    fn unreachable_pairs_are_satisfied() {
        let g = Graph64::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert!(validate_spanner(&Spanner::full(&g, 1.0)).valid);
        let broken = validate_spanner(&Spanner::from_edges(&g, [0], 2.0));
        assert!(!broken.valid);
        assert_eq!(broken.worst.unwrap().2, f64::INFINITY);
    }
}
