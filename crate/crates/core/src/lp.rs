//! Covering linear programs: minimize `sum x_j` subject to rows
//! `sum_{j in row} x_j >= 1` and `0 <= x <= 1`.
//!
//! With unit costs and 0/1 rows the upper bounds never bind at an optimum
//! (lowering any `x_j > 1` to 1 keeps every row satisfied), so the solver
//! works on `x >= 0` only. Before pivoting, singleton rows fix their
//! variable to 1, rows that contain another row are dropped, and the
//! remaining rows are split into independent blocks that share no variable.
//!
//! [`DenseSimplex`] is the reference backend; [`SparseSimplex`] wraps a
//! sparse revised simplex and is the default for large pools.

use std::collections::HashSet;

use thiserror::Error;

use crate::deadline::{Cancelled, Deadline};
use crate::graph::forest::DisjointSet;
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("constraint rows must name at least one variable")]
    EmptyRow,
    #[error("variable {var} out of range for {num_vars} variables")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("simplex broke down numerically: {0}")]
    NumericalBreakdown(String),
    #[error(transparent)]
    Cancelled(#[from] Cancelled),
}

/// Pool of covering rows over `num_vars` variables.
#[derive(Debug, Clone)]
pub struct LpProblem<T> {
    num_vars: usize,
    rows: Vec<Vec<usize>>,
    seen: HashSet<Vec<usize>>,
    _scalar: std::marker::PhantomData<T>,
}

impl<T: Scalar> LpProblem<T> {
    pub fn new(num_vars: usize) -> Self {
        LpProblem { num_vars, rows: Vec::new(), seen: HashSet::new(), _scalar: std::marker::PhantomData }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Adds the row `sum_{j in vars} x_j >= 1`. Returns `false` when an identical
    /// row is already present.
    pub fn add_row(&mut self, vars: impl IntoIterator<Item = usize>) -> Result<bool, LpError> {
        let mut row: Vec<usize> = vars.into_iter().collect();
        row.sort_unstable();
        row.dedup();
        if row.is_empty() {
            return Err(LpError::EmptyRow);
        }
        if let Some(&var) = row.iter().find(|&&j| j >= self.num_vars) {
            return Err(LpError::VariableOutOfRange { var, num_vars: self.num_vars });
        }
        if !self.seen.insert(row.clone()) {
            return Ok(false);
        }
        self.rows.push(row);
        Ok(true)
    }

    /// Smallest slack `sum_{j in row} x_j - 1` over all rows (infinity without rows).
    pub fn min_slack(&self, x: &[T]) -> T {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&j| x[j]).sum::<T>() - T::one())
            .fold(T::infinity(), T::min)
    }

    /// Solves with the default backend, [`SparseSimplex`].
    pub fn solve(&self) -> Result<FractionalSolution<T>, LpError> {
        SparseSimplex::default().solve(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution<T> {
    pub x: Vec<T>,
    pub objective: T,
    /// Optimal dual value per row, in row order, when the backend reports them.
    pub duals: Option<Vec<T>>,
}

/// Anything that can solve a covering pool.
pub trait LpBackend<T> {
    fn solve_until(&mut self, problem: &LpProblem<T>, deadline: &Deadline) -> Result<FractionalSolution<T>, LpError>;

    fn solve(&mut self, problem: &LpProblem<T>) -> Result<FractionalSolution<T>, LpError> {
        self.solve_until(problem, &Deadline::never())
    }
}

/// Dense-tableau dual simplex with Bland's rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseSimplex {
    pub presolve: bool,
}

impl Default for DenseSimplex {
    fn default() -> Self {
        DenseSimplex { presolve: true }
    }
}

fn tolerance<T: Scalar>() -> T {
    T::of(1e-9).max(T::epsilon() * T::of(1e3))
}

impl<T: Scalar> LpBackend<T> for DenseSimplex {
    fn solve_until(&mut self, problem: &LpProblem<T>, deadline: &Deadline) -> Result<FractionalSolution<T>, LpError> {
        let rows = problem.rows();
        let mut x = vec![T::zero(); problem.num_vars];
        let mut duals = vec![T::zero(); rows.len()];
        let mut active: Vec<usize> = (0..rows.len()).collect();

        if self.presolve {
            let mut fixed = vec![false; problem.num_vars];
            loop {
                let singles: Vec<usize> = active.iter().copied().filter(|&i| rows[i].len() == 1).collect();
                if singles.is_empty() {
                    break;
                }
                for i in singles {
                    let j = rows[i][0];
                    if !fixed[j] {
                        fixed[j] = true;
                        x[j] = T::one();
                        duals[i] = T::one();
                    }
                }
                active.retain(|&i| !rows[i].iter().any(|&j| fixed[j]));
            }
            active = drop_dominated(rows, active);
        }

        let mut blocks = DisjointSet::new(problem.num_vars);
        for &i in &active {
            for w in rows[i].windows(2) {
                blocks.union(w[0], w[1]);
            }
        }
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); problem.num_vars];
        for &i in &active {
            by_root[blocks.find(rows[i][0])].push(i);
        }
        for block in by_root.into_iter().filter(|b| !b.is_empty()) {
            solve_block(rows, &block, &mut x, &mut duals, deadline)?;
        }

        let tol = tolerance::<T>();
        for v in x.iter_mut() {
            *v = v.max(T::zero()).min(T::one());
        }
        if problem.min_slack(&x) < -tol {
            return Err(LpError::NumericalBreakdown(format!("row violated by {}", -problem.min_slack(&x))));
        }
        let objective = x.iter().copied().sum();
        Ok(FractionalSolution { x, objective, duals: Some(duals) })
    }
}

/// Largest number of new rows added to a kept optimum instead of solving afresh.
const WARM_ROWS: usize = 32;

/// Sparse revised dual simplex from the `microlp` crate. Reports no duals.
///
/// Keeps the last optimum and, when the next pool extends the previous one by
/// at most [`WARM_ROWS`] rows, adds them to it instead of solving from scratch.
#[derive(Debug, Default)]
pub struct SparseSimplex {
    warm: Option<Warm>,
}

#[derive(Debug)]
struct Warm {
    num_vars: usize,
    rows: Vec<Vec<usize>>,
    vars: Vec<microlp::Variable>,
    solution: microlp::Solution,
}

fn optimal(outcome: microlp::SolveOutcome) -> Result<microlp::Solution, LpError> {
    match outcome {
        microlp::SolveOutcome::Solution(s) if s.status() == microlp::SolutionStatus::Optimal => Ok(s),
        _ => Err(Cancelled.into()),
    }
}

fn breakdown(e: microlp::Error) -> LpError {
    LpError::NumericalBreakdown(e.to_string())
}

fn row_expr(vars: &[microlp::Variable], row: &[usize]) -> Vec<(microlp::Variable, f64)> {
    row.iter().map(|&j| (vars[j], 1.0)).collect()
}

impl SparseSimplex {
    fn cold(problem_rows: &[Vec<usize>], num_vars: usize, deadline: &Deadline) -> Result<Warm, LpError> {
        use microlp::{ComparisonOp, OptimizationDirection, Problem};

        let mut lp = Problem::new(OptimizationDirection::Minimize);
        if let Some(left) = deadline.remaining() {
            lp.set_time_limit(left);
        }
        let vars: Vec<_> = (0..num_vars).map(|_| lp.add_var(1.0, (0.0, 1.0))).collect();
        for row in problem_rows {
            lp.add_constraint(row_expr(&vars, row).as_slice(), ComparisonOp::Ge, 1.0);
        }
        let solution = optimal(lp.solve().map_err(breakdown)?)?;
        Ok(Warm { num_vars, rows: problem_rows.to_vec(), vars, solution })
    }

    fn extend(mut warm: Warm, new_rows: &[Vec<usize>], deadline: &Deadline) -> Result<Warm, LpError> {
        for row in new_rows {
            deadline.check()?;
            let expr = row_expr(&warm.vars, row);
            warm.solution = optimal(warm.solution.add_constraint(expr.as_slice(), microlp::ComparisonOp::Ge, 1.0).map_err(breakdown)?)?;
            warm.rows.push(row.clone());
        }
        Ok(warm)
    }
}

impl<T: Scalar> LpBackend<T> for SparseSimplex {
    fn solve_until(&mut self, problem: &LpProblem<T>, deadline: &Deadline) -> Result<FractionalSolution<T>, LpError> {
        deadline.check()?;
        let rows = problem.rows();
        let warm = match self.warm.take() {
            Some(w)
                if w.num_vars == problem.num_vars
                    && w.rows.len() <= rows.len()
                    && rows.len() - w.rows.len() <= WARM_ROWS
                    && w.rows[..] == rows[..w.rows.len()] =>
            {
                let done = w.rows.len();
                Self::extend(w, &rows[done..], deadline)?
            }
            _ => Self::cold(rows, problem.num_vars, deadline)?,
        };
        let x: Vec<T> = warm.vars.iter().map(|&v| T::of(warm.solution.var_value(v).clamp(0.0, 1.0))).collect();
        self.warm = Some(warm);
        let tol = tolerance::<T>();
        if problem.min_slack(&x) < -tol {
            return Err(LpError::NumericalBreakdown(format!("row violated by {}", -problem.min_slack(&x))));
        }
        let objective = x.iter().copied().sum();
        Ok(FractionalSolution { x, objective, duals: None })
    }
}

// Keeps only rows that contain no other active row.
fn drop_dominated(rows: &[Vec<usize>], mut active: Vec<usize>) -> Vec<usize> {
    active.sort_by_key(|&i| rows[i].len());
    let mut kept: Vec<usize> = Vec::with_capacity(active.len());
    let subset = |a: &[usize], b: &[usize]| {
        let mut it = b.iter();
        a.iter().all(|x| it.any(|y| y == x))
    };
    for i in active {
        if !kept.iter().any(|&k| subset(&rows[k], &rows[i])) {
            kept.push(i);
        }
    }
    kept.sort_unstable();
    kept
}

// Dual simplex on one block. Columns are the block's variables followed by one
// surplus per row; each row is stored negated so the surplus basis starts
// dual feasible with right-hand side -1.
fn solve_block<T: Scalar>(
    rows: &[Vec<usize>],
    block: &[usize],
    x: &mut [T],
    duals: &mut [T],
    deadline: &Deadline,
) -> Result<(), LpError> {
    let mut vars: Vec<usize> = block.iter().flat_map(|&i| rows[i].iter().copied()).collect();
    vars.sort_unstable();
    vars.dedup();
    let nv = vars.len();
    let r = block.len();
    let cols = nv + r;
    let tol = tolerance::<T>();

    let mut tab = vec![T::zero(); r * cols];
    let mut rhs = vec![-T::one(); r];
    for (p, &i) in block.iter().enumerate() {
        for &j in &rows[i] {
            let c = vars.binary_search(&j).expect("block variable");
            tab[p * cols + c] = -T::one();
        }
        tab[p * cols + nv + p] = T::one();
    }
    let mut cost: Vec<T> = (0..cols).map(|c| if c < nv { T::one() } else { T::zero() }).collect();
    let mut basis: Vec<usize> = (nv..cols).collect();

    let max_pivots = 50 * cols + 1000;
    let mut pivots = 0;
    loop {
        // Bland: leave with the infeasible row whose basic column is smallest
        let leaving = (0..r).filter(|&p| rhs[p] < -tol).min_by_key(|&p| basis[p]);
        let Some(p) = leaving else { break };
        deadline.check()?;
        pivots += 1;
        if pivots > max_pivots {
            return Err(LpError::NumericalBreakdown(format!("no convergence after {max_pivots} pivots")));
        }
        let row = &tab[p * cols..(p + 1) * cols];
        let mut entering: Option<(usize, T)> = None;
        for (c, &a) in row.iter().enumerate() {
            if a < -tol {
                let ratio = cost[c] / -a;
                if entering.is_none_or(|(_, best)| ratio < best - tol) {
                    entering = Some((c, ratio));
                }
            }
        }
        let Some((q, _)) = entering else {
            return Err(LpError::NumericalBreakdown("infeasible row in covering program".into()));
        };
        pivot(&mut tab, &mut rhs, &mut cost, cols, p, q);
        basis[p] = q;
    }

    for (p, &c) in basis.iter().enumerate() {
        if c < nv {
            x[vars[c]] = rhs[p];
        }
    }
    for (p, &i) in block.iter().enumerate() {
        duals[i] = cost[nv + p].max(T::zero());
    }
    Ok(())
}

fn pivot<T: Scalar>(tab: &mut [T], rhs: &mut [T], cost: &mut [T], cols: usize, p: usize, q: usize) {
    let inv = T::one() / tab[p * cols + q];
    for v in &mut tab[p * cols..(p + 1) * cols] {
        *v = *v * inv;
    }
    rhs[p] = rhs[p] * inv;
    let (before, rest) = tab.split_at_mut(p * cols);
    let (prow, after) = rest.split_at_mut(cols);
    let rows = before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols));
    for (i, row) in rows.enumerate() {
        let i = if i < p { i } else { i + 1 };
        let f = row[q];
        if f != T::zero() {
            for (v, &pv) in row.iter_mut().zip(prow.iter()) {
                *v = *v - f * pv;
            }
            rhs[i] = rhs[i] - f * rhs[p];
        }
    }
    let f = cost[q];
    if f != T::zero() {
        for (v, &pv) in cost.iter_mut().zip(prow.iter()) {
            *v = *v - f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn problem(num_vars: usize, rows: &[&[usize]]) -> LpProblem<f64> {
        let mut p = LpProblem::new(num_vars);
        for row in rows {
            p.add_row(row.iter().copied()).unwrap();
        }
        p
    }

    // Solves a square system by Gaussian elimination with partial pivoting.
    fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
        let n = b.len();
        for col in 0..n {
            let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
            if a[piv][col].abs() < 1e-12 {
                return None;
            }
            a.swap(col, piv);
            b.swap(col, piv);
            for i in 0..n {
                if i != col {
                    let f = a[i][col] / a[col][col];
                    for k in col..n {
                        a[i][k] -= f * a[col][k];
                    }
                    b[i] -= f * b[col];
                }
            }
        }
        Some((0..n).map(|i| b[i] / a[i][i]).collect())
    }

    // Minimum over all basic feasible solutions of {Ax >= 1, x >= 0}.
    fn vertex_enumeration(num_vars: usize, rows: &[Vec<usize>]) -> f64 {
        let mut constraints: Vec<(Vec<f64>, f64)> = rows
            .iter()
            .map(|row| ((0..num_vars).map(|j| if row.contains(&j) { 1.0 } else { 0.0 }).collect(), 1.0))
            .collect();
        for j in 0..num_vars {
            constraints.push(((0..num_vars).map(|k| if k == j { 1.0 } else { 0.0 }).collect(), 0.0));
        }
        let total = constraints.len();
        let mut best = f64::INFINITY;
        let mut pick: Vec<usize> = (0..num_vars).collect();
        loop {
            let a = pick.iter().map(|&i| constraints[i].0.clone()).collect();
            let b = pick.iter().map(|&i| constraints[i].1).collect();
            if let Some(x) = solve_square(a, b) {
                let feasible = constraints
                    .iter()
                    .all(|(row, rhs)| row.iter().zip(&x).map(|(a, x)| a * x).sum::<f64>() >= rhs - 1e-9);
                if feasible {
                    best = best.min(x.iter().sum());
                }
            }
            // next combination
            let mut i = num_vars;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if pick[i] < total - num_vars + i {
                    break;
                }
            }
            pick[i] += 1;
            for k in i + 1..num_vars {
                pick[k] = pick[k - 1] + 1;
            }
        }
    }

    fn random_problem(rng: &mut impl Rng) -> LpProblem<f64> {
        let num_vars = rng.gen_range(1..=8);
        let mut p = LpProblem::new(num_vars);
        for _ in 0..rng.gen_range(1..=6) {
            let row: Vec<usize> = (0..num_vars).filter(|_| rng.gen_bool(0.4)).collect();
            let row = if row.is_empty() { vec![rng.gen_range(0..num_vars)] } else { row };
            p.add_row(row).unwrap();
        }
        p
    }

    #[test]
    fn single_row() {
        let s = problem(2, &[&[0, 1]]).solve().unwrap();
        assert!((s.objective - 1.0).abs() < 1e-9);
    }

    #[test]
    fn disjoint_singletons() {
        for presolve in [true, false] {
            let s = DenseSimplex { presolve }.solve(&problem(2, &[&[0], &[1]])).unwrap();
            assert_eq!(s.x, vec![1.0, 1.0]);
            assert!((s.objective - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn odd_cycle_is_fractional() {
        let s = problem(3, &[&[0, 1], &[1, 2], &[0, 2]]).solve().unwrap();
        assert!((s.objective - 1.5).abs() < 1e-9);
        assert!(s.x.iter().all(|&v| (v - 0.5).abs() < 1e-9));
    }

    #[test]
    fn row_validation() {
        let mut p = LpProblem::<f64>::new(3);
        assert_eq!(p.add_row([]), Err(LpError::EmptyRow));
        assert_eq!(p.add_row([3]), Err(LpError::VariableOutOfRange { var: 3, num_vars: 3 }));
        assert_eq!(p.add_row([2, 0, 2]), Ok(true));
        assert_eq!(p.add_row([0, 2]), Ok(false));
        assert_eq!(p.rows().len(), 1);
    }

    #[test]
    fn matches_vertex_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let p = random_problem(&mut rng);
            let want = vertex_enumeration(p.num_vars(), p.rows());
            let backends: [Box<dyn LpBackend<f64>>; 3] =
                [Box::new(DenseSimplex { presolve: true }), Box::new(DenseSimplex { presolve: false }), Box::new(SparseSimplex::default())];
            for mut backend in backends {
                let got = backend.solve(&p).unwrap();
                assert!((got.objective - want).abs() < 1e-6, "got {} want {want}", got.objective);
                assert!(p.min_slack(&got.x) >= -1e-9);
                assert!(got.x.iter().all(|&v| (0.0..=1.0).contains(&v)));
            }
        }
    }

    #[test]
    fn added_rows_never_lower_the_objective() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let num_vars = rng.gen_range(2..=10);
            let mut p = LpProblem::<f64>::new(num_vars);
            let mut last = 0.0;
            for _ in 0..8 {
                let row: Vec<usize> = (0..num_vars).filter(|_| rng.gen_bool(0.35)).collect();
                if row.is_empty() {
                    continue;
                }
                let before = p.clone();
                let fresh = p.add_row(row.clone()).unwrap();
                let s = p.solve().unwrap();
                assert!(s.objective >= last - 1e-7);
                if !fresh {
                    assert!((s.objective - before.solve().unwrap().objective).abs() < 1e-9);
                }
                let implied = row.iter().map(|&j| s.x[j]).sum::<f64>() >= 1.0 - 1e-9;
                if implied {
                    // re-adding a satisfied row leaves the optimum alone
                    let mut again = p.clone();
                    again.add_row(row).unwrap();
                    assert!((again.solve().unwrap().objective - s.objective).abs() < 1e-9);
                }
                last = s.objective;
            }
        }
    }

    #[test]
    fn complementary_slackness() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let p = random_problem(&mut rng);
            for presolve in [true, false] {
                let s = DenseSimplex { presolve }.solve(&p).unwrap();
                let y = s.duals.as_ref().unwrap();
                // dual feasibility: every column's dual load is at most its cost
                for j in 0..p.num_vars() {
                    let load: f64 = p.rows().iter().zip(y).filter(|(r, _)| r.contains(&j)).map(|(_, &v)| v).sum();
                    assert!(load <= 1.0 + 1e-9);
                    if s.x[j] > 1e-9 {
                        assert!((load - 1.0).abs() < 1e-7);
                    }
                }
                for (row, &yi) in p.rows().iter().zip(y) {
                    assert!(yi >= 0.0);
                    let slack: f64 = row.iter().map(|&j| s.x[j]).sum::<f64>() - 1.0;
                    assert!(yi * slack < 1e-7);
                }
                let dual_obj: f64 = y.iter().sum();
                assert!((dual_obj - s.objective).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn single_precision() {
        let mut p = LpProblem::<f32>::new(3);
        for row in [[0, 1], [1, 2], [0, 2]] {
            p.add_row(row).unwrap();
        }
        assert!((p.solve().unwrap().objective - 1.5).abs() < 1e-4);
    }
}
