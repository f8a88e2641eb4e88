//! Algorithm outputs against exhaustive reference solutions on small inputs.

mod support;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanner_core::instances::{gen_er, ErSpec};
use spanner_core::kp::density::max_density_subgraph;
use spanner_core::kp::flow::{max_flow, PushRelabelOptions};
use spanner_core::{construct, AlgoConfig, Algorithm, Deadline, FlowNetwork64, Graph64, LpProblem64};
use support::*;

fn small_graphs() -> Vec<(String, Graph64)> {
    let mut out: Vec<_> = structured_corpus().into_iter().filter(|(_, g)| g.n() <= 8).collect();
    for (i, rho) in RHOS.into_iter().enumerate() {
        for n in [5, 6, 7, 8] {
            let spec = ErSpec { n, rel_density: rho, weighted: false, seed: i as u64 };
            out.push((format!("er_n{n}_r{rho}"), gen_er(&spec).unwrap()));
        }
    }
    let weighted: Vec<_> = out.iter().enumerate().map(|(i, (name, g))| (format!("{name}_w"), weigh(g, i as u64))).collect();
    out.extend(weighted);
    out
}

#[test]
fn outputs_never_beat_the_sparsest_spanner() {
    for (name, g) in small_graphs() {
        for alpha in [2.0, 3.0, 4.0, 5.0, 7.0] {
            let opt = sparsest_spanner_size_bnb(&g, alpha);
            let k = ((alpha + 1.0) / 2.0).floor();
            for algo in Algorithm::ALL {
                if algo.incompatibility(alpha, g.is_weighted()).is_some() {
                    continue;
                }
                for seed in 0..3 {
                    let out = construct(&g, algo, &AlgoConfig::new(alpha, seed), &Deadline::never());
                    let Ok(out) = out else { continue };
                    let size = out.spanner.size();
                    assert!(size >= opt, "{name} {algo} alpha={alpha}: {size} < optimum {opt}");
                    if algo == Algorithm::Addjs {
                        let bound = (g.n() as f64).powf(1.0 / k) * opt as f64;
                        assert!(size as f64 <= bound, "{name} addjs alpha={alpha}: {size} > {bound}");
                    }
                }
            }
        }
    }
}

#[test]
fn both_exhaustive_searches_agree() {
    for (name, g) in small_graphs().into_iter().filter(|(_, g)| g.m() <= 15) {
        for alpha in [1.0, 1.5, 2.0, 3.0, 5.0] {
            assert_eq!(sparsest_spanner_size(&g, alpha), sparsest_spanner_size_bnb(&g, alpha), "{name} alpha={alpha}");
        }
    }
}

#[test]
fn kp_on_complete_graphs_is_optimal() {
    for n in [5, 6, 7, 8] {
        let g = complete(n);
        let out = construct(&g, Algorithm::Kp, &AlgoConfig::new(2.0, 0), &Deadline::never()).unwrap();
        assert_eq!(out.spanner.size(), sparsest_spanner_size_bnb(&g, 2.0));
    }
}

#[test]
fn push_relabel_matches_augmenting_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=12);
        let mut net = FlowNetwork64::new(n);
        let mut arcs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(0.35) {
                    let c = rng.gen_range(0..=20) as f64;
                    net.add_arc(u, v, c);
                    arcs.push((u, v, c));
                }
            }
        }
        let expected = edmonds_karp(n, &arcs, 0, n - 1);
        for opts in [
            PushRelabelOptions::default(),
            PushRelabelOptions { global_relabel: false, gap: false },
        ] {
            assert_eq!(max_flow(&net, 0, n - 1, opts).value, expected);
        }
    }
}

#[test]
fn densest_subgraph_matches_subset_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.1..0.9);
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        let found = max_density_subgraph::<f64>(n, &edges).unwrap();
        let best = densest_exhaustive(n, &edges);
        let tol = 1.0 / (n * (n - 1)) as f64;
        assert!((found.density() - best).abs() <= tol, "n={n}: {} vs {best}", found.density());
    }
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let vars = rng.gen_range(1..=8);
        let mut lp = LpProblem64::new(vars);
        for _ in 0..rng.gen_range(1..=10) {
            let row: Vec<_> = (0..vars).filter(|_| rng.gen_bool(0.4)).collect();
            if !row.is_empty() {
                lp.add_row(row).unwrap();
            }
        }
        if lp.rows().is_empty() {
            lp.add_row([0]).unwrap();
        }
        let sol = lp.solve().unwrap();
        let expected = covering_lp_by_vertices(vars, lp.rows());
        assert!((sol.objective - expected).abs() <= 1e-6, "{} vs {expected}", sol.objective);
        assert!(lp.min_slack(&sol.x) >= -1e-9);
    }
}
