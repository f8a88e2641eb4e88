//! FIFO push-relabel maximum flow with the global relabeling and gap
//! heuristics.
//!
//! Runs as a single phase: nodes that can no longer reach the sink are
//! lifted above `n` and return their excess to the source, so the result is
//! a proper flow and the source side of the minimum cut is read off the
//! residual network.

use std::collections::VecDeque;

use crate::Scalar;

#[derive(Debug, Clone)]
pub struct FlowNetwork<W> {
    n: usize,
    head: Vec<usize>,
    capacity: Vec<W>,
    out: Vec<Vec<usize>>,
}

impl<W: Scalar> FlowNetwork<W> {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, head: Vec::new(), capacity: Vec::new(), out: vec![Vec::new(); n] }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Adds arc `u -> v` and its zero-capacity reverse. Returns the forward arc id;
    /// the reverse arc is `id ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, capacity: W) -> usize {
        assert!(capacity >= W::zero() && capacity.is_finite(), "capacity must be finite and nonnegative");
        let id = self.head.len();
        self.head.push(v);
        self.capacity.push(capacity);
        self.out[u].push(id);
        self.head.push(u);
        self.capacity.push(W::zero());
        self.out[v].push(id + 1);
        id
    }

    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.head[arc ^ 1]
    }

    pub fn capacity(&self, arc: usize) -> W {
        self.capacity[arc]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PushRelabelOptions {
    pub global_relabel: bool,
    pub gap: bool,
}

impl Default for PushRelabelOptions {
    fn default() -> Self {
        PushRelabelOptions { global_relabel: true, gap: true }
    }
}

#[derive(Debug, Clone)]
pub struct MaxFlow<W> {
    pub value: W,
    /// Flow on every arc id (reverse arcs carry the negated amount).
    pub flow: Vec<W>,
    /// Nodes reachable from the source in the residual network.
    pub source_side: Vec<bool>,
}

struct Solver<'a, W> {
    net: &'a FlowNetwork<W>,
    residual: Vec<W>,
    excess: Vec<W>,
    label: Vec<usize>,
    count: Vec<usize>,
    current: Vec<usize>,
    active: VecDeque<usize>,
    queued: Vec<bool>,
    s: usize,
    t: usize,
    opts: PushRelabelOptions,
}

impl<W: Scalar> Solver<'_, W> {
    fn cap_label(&self) -> usize {
        2 * self.net.n
    }

    fn set_label(&mut self, v: usize, l: usize) {
        let cap = self.cap_label();
        self.count[self.label[v].min(cap)] -= 1;
        self.label[v] = l.min(cap);
        self.count[self.label[v]] += 1;
    }

    fn activate(&mut self, v: usize) {
        if v != self.s && v != self.t && !self.queued[v] && self.excess[v] > W::zero() {
            self.queued[v] = true;
            self.active.push_back(v);
        }
    }

    // Exact labels: distance to t, or n + distance to s for nodes cut off from t.
    fn global_relabel(&mut self) {
        let n = self.net.n;
        let unset = usize::MAX;
        let mut lab = vec![unset; n];
        let mut queue = VecDeque::new();
        for (root, base) in [(self.t, 0), (self.s, n)] {
            lab[root] = base;
            queue.push_back(root);
            while let Some(w) = queue.pop_front() {
                for &a in &self.net.out[w] {
                    // arc a: w -> v; the residual arc v -> w is a ^ 1
                    let v = self.net.head[a];
                    if lab[v] == unset && self.residual[a ^ 1] > W::zero() {
                        lab[v] = lab[w] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        let cap = self.cap_label();
        self.count.iter_mut().for_each(|c| *c = 0);
        for v in 0..n {
            self.label[v] = if lab[v] == unset { cap } else { lab[v].min(cap) };
            self.count[self.label[v]] += 1;
            self.current[v] = 0;
        }
    }

    fn gap(&mut self, emptied: usize) {
        let n = self.net.n;
        for v in 0..n {
            let l = self.label[v];
            if l > emptied && l < n && v != self.s {
                self.set_label(v, n + 1);
                self.current[v] = 0;
            }
        }
    }

    fn push(&mut self, v: usize, a: usize) {
        let w = self.net.head[a];
        let delta = if self.excess[v] < self.residual[a] { self.excess[v] } else { self.residual[a] };
        self.residual[a] = self.residual[a] - delta;
        self.residual[a ^ 1] = self.residual[a ^ 1] + delta;
        self.excess[v] = self.excess[v] - delta;
        self.excess[w] = self.excess[w] + delta;
        self.activate(w);
    }

    // Returns the number of relabels performed.
    fn discharge(&mut self, v: usize) -> usize {
        let mut relabels = 0;
        let cap = self.cap_label();
        while self.excess[v] > W::zero() {
            if self.label[v] >= cap {
                // unreachable excess caused by rounding; drop it
                self.excess[v] = W::zero();
                break;
            }
            if self.current[v] < self.net.out[v].len() {
                let a = self.net.out[v][self.current[v]];
                let w = self.net.head[a];
                if self.residual[a] > W::zero() && self.label[v] == self.label[w] + 1 {
                    self.push(v, a);
                } else {
                    self.current[v] += 1;
                }
                continue;
            }
            let old = self.label[v];
            let lowest = self.net.out[v]
                .iter()
                .filter(|&&a| self.residual[a] > W::zero())
                .map(|&a| self.label[self.net.head[a]])
                .min();
            let next = lowest.map_or(cap, |l| l + 1);
            self.set_label(v, next);
            self.current[v] = 0;
            relabels += 1;
            if self.opts.gap && old < self.net.n && self.count[old] == 0 {
                self.gap(old);
            }
        }
        relabels
    }
}

/// Maximum `s`-`t` flow on `net`.
pub fn max_flow<W: Scalar>(net: &FlowNetwork<W>, s: usize, t: usize, opts: PushRelabelOptions) -> MaxFlow<W> {
    assert!(s != t, "source and sink must differ");
    let n = net.n;
    let mut solver = Solver {
        net,
        residual: net.capacity.clone(),
        excess: vec![W::zero(); n],
        label: vec![0; n],
        count: vec![0; 2 * n + 1],
        current: vec![0; n],
        active: VecDeque::new(),
        queued: vec![false; n],
        s,
        t,
        opts,
    };
    solver.label[s] = n;
    solver.count[0] = n - 1;
    solver.count[n] += 1;
    for i in 0..net.out[s].len() {
        let a = net.out[s][i];
        let c = solver.residual[a];
        if c > W::zero() {
            let w = net.head[a];
            solver.residual[a] = W::zero();
            solver.residual[a ^ 1] = solver.residual[a ^ 1] + c;
            solver.excess[w] = solver.excess[w] + c;
            solver.excess[s] = solver.excess[s] - c;
        }
    }
    if opts.global_relabel {
        solver.global_relabel();
    }
    for v in 0..n {
        solver.activate(v);
    }
    let interval = n.max(1);
    let mut since_global = 0;
    while let Some(v) = solver.active.pop_front() {
        solver.queued[v] = false;
        since_global += solver.discharge(v);
        if opts.global_relabel && since_global >= interval {
            solver.global_relabel();
            since_global = 0;
        }
    }

    let mut source_side = vec![false; n];
    let mut queue = VecDeque::from([s]);
    source_side[s] = true;
    while let Some(v) = queue.pop_front() {
        for &a in &net.out[v] {
            let w = net.head[a];
            if !source_side[w] && solver.residual[a] > W::zero() {
                source_side[w] = true;
                queue.push_back(w);
            }
        }
    }
    let flow = net.capacity.iter().zip(&solver.residual).map(|(&c, &r)| c - r).collect();
    MaxFlow { value: solver.excess[t], flow, source_side }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const ALL_OPTIONS: [PushRelabelOptions; 4] = [
        PushRelabelOptions { global_relabel: true, gap: true },
        PushRelabelOptions { global_relabel: true, gap: false },
        PushRelabelOptions { global_relabel: false, gap: true },
        PushRelabelOptions { global_relabel: false, gap: false },
    ];

    // Edmonds-Karp on a dense capacity matrix.
    fn augmenting_paths(n: usize, arcs: &[(usize, usize, f64)], s: usize, t: usize) -> f64 {
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
            let mut bottleneck = f64::INFINITY;
            let mut v = t;
            while v != s {
                bottleneck = bottleneck.min(cap[prev[v]][v]);
                v = prev[v];
            }
            let mut v = t;
            while v != s {
                cap[prev[v]][v] -= bottleneck;
                cap[v][prev[v]] += bottleneck;
                v = prev[v];
            }
            total += bottleneck;
        }
    }

    fn build(n: usize, arcs: &[(usize, usize, f64)]) -> FlowNetwork<f64> {
        let mut net = FlowNetwork::new(n);
        for &(u, v, c) in arcs {
            net.add_arc(u, v, c);
        }
        net
    }

    #[test]
    fn single_arc() {
        let net = build(2, &[(0, 1, 5.0)]);
        assert_eq!(max_flow(&net, 0, 1, Default::default()).value, 5.0);
    }

    #[test]
    fn diamond() {
        // s=0, a=1, b=2, t=3
        let net = build(4, &[(0, 1, 1.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 1.0), (1, 2, 1.0)]);
        for opts in ALL_OPTIONS {
            assert_eq!(max_flow(&net, 0, 3, opts).value, 2.0);
        }
    }

    #[test]
    fn matches_augmenting_path_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..=12);
            let mut arcs = Vec::new();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.3) {
                        arcs.push((u, v, rng.gen_range(0..=10) as f64));
                    }
                }
            }
            let net = build(n, &arcs);
            let expected = augmenting_paths(n, &arcs, 0, n - 1);
            for opts in ALL_OPTIONS {
                let res = max_flow(&net, 0, n - 1, opts);
                assert_eq!(res.value, expected);
                // conservation and capacity bounds
                let mut balance = vec![0.0; n];
                for a in (0..net.arc_count()).step_by(2) {
                    assert!(res.flow[a] >= 0.0 && res.flow[a] <= net.capacity(a));
                    balance[net.tail(a)] -= res.flow[a];
                    balance[net.head(a)] += res.flow[a];
                }
                for (v, b) in balance.iter().enumerate() {
                    if v != 0 && v != n - 1 {
                        assert_eq!(*b, 0.0);
                    }
                }
                // cut capacity equals flow value
                assert!(res.source_side[0] && !res.source_side[n - 1]);
                let cut: f64 = (0..net.arc_count())
                    .step_by(2)
                    .filter(|&a| res.source_side[net.tail(a)] && !res.source_side[net.head(a)])
                    .map(|a| net.capacity(a))
                    .sum();
                assert_eq!(cut, expected);
            }
        }
    }
}
