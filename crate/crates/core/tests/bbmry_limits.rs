//! Wall-clock limits on the cutting-plane loop of a large degenerate LP.

use std::time::{Duration, Instant};

use spanner_core::bbmry::{berman_spanner_until, BbmryConfig, BbmryError};
use spanner_core::graph::validate::validate_spanner;
use spanner_core::instances::{gen_er, ErSpec};
use spanner_core::{Deadline, Graph64};

fn heavy() -> Graph64 {
    gen_er(&ErSpec { n: 100, rel_density: 0.3, weighted: false, seed: 7 }).unwrap()
}

#[test]
fn budget_stops_inside_the_lp_and_completes() {
    let g = heavy();
    let mut cfg = BbmryConfig::new(2.0, 0).unwrap();
    cfg.time_budget = Some(Duration::from_millis(500));
    let t = Instant::now();
    let out = berman_spanner_until(&g, &cfg, &Deadline::never()).unwrap();
    assert!(t.elapsed() < Duration::from_secs(10), "took {:?}", t.elapsed());
    assert!(!out.arcs.clean_exit);
    assert!(validate_spanner(&out.spanner).valid);
}

#[test]
fn deadline_interrupts_the_lp() {
    let g = heavy();
    let cfg = BbmryConfig::new(2.0, 0).unwrap();
    let t = Instant::now();
    let res = berman_spanner_until(&g, &cfg, &Deadline::after(Duration::from_millis(500)));
    assert!(matches!(res, Err(BbmryError::Cancelled(_))));
    assert!(t.elapsed() < Duration::from_secs(5), "took {:?}", t.elapsed());
}
