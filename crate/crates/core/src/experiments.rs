//! Numerical experiments: the test-function catalog, error statistics, and
//! the runners behind the command-line harness. Every runner returns plain
//! data; the `*_csv` functions render it.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cheb_basis::{clenshaw, ChebSeries};
use crate::differentiation::{derivative_chain, Strategy};
use crate::error::{Error, Result};
use crate::error_analysis::{loglog_regression, nodal_norms, BoundReport, NodalNorms, RegressionResult};
use crate::operator::{FitResult, Problem};

/// Highest derivative order reported by the experiments.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunction {
    /// `x e^{-2x} + sin(3x)`
    F1,
    /// `e^{-50 (x - 0.4)^2} + sinh(x)`
    F2,
    /// `1 / (1 + 8 x^2)`
    F3,
    /// `1 / (1 + 25 x^2)`
    F4,
}

impl TestFunction {
    pub const ALL: [TestFunction; 4] = [Self::F1, Self::F2, Self::F3, Self::F4];

    pub fn name(&self) -> &'static str {
        match self {
            Self::F1 => "f1",
            Self::F2 => "f2",
            Self::F3 => "f3",
            Self::F4 => "f4",
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    /// Closed-form `k`-th derivative.
    pub fn derivative(&self, k: usize, x: f64) -> f64 {
        match self {
            Self::F1 => {
                // d^k (x e^{-2x}) = (-2)^{k-1} e^{-2x} (k - 2x)
                let poly_exp = (-2f64).powi(k as i32 - 1) * (-2.0 * x).exp() * (k as f64 - 2.0 * x);
                let s = 3f64.powi(k as i32) * shifted_sin(3.0 * x, k);
                poly_exp + s
            }
            Self::F2 => {
                let a: f64 = 50.0;
                let sa = a.sqrt();
                let u = x - 0.4;
                let gauss = (-a * u * u).exp();
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                let g = sign * sa.powi(k as i32) * hermite(k, sa * u) * gauss;
                let h = if k.is_multiple_of(2) { x.sinh() } else { x.cosh() };
                g + h
            }
            Self::F3 => rational_derivative(8.0, k, x),
            Self::F4 => rational_derivative(25.0, k, x),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Self::F1),
            "f2" => Ok(Self::F2),
            "f3" => Ok(Self::F3),
            "f4" => Ok(Self::F4),
            other => Err(Error::Degenerate(format!("unknown test function '{other}'"))),
        }
    }
}

// sin(t + k pi/2)
fn shifted_sin(t: f64, k: usize) -> f64 {
    match k % 4 {
        0 => t.sin(),
        1 => t.cos(),
        2 => -t.sin(),
        _ => -t.cos(),
    }
}

// Physicists' Hermite polynomial H_k(t).
fn hermite(k: usize, t: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * t);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let next = 2.0 * t * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

// 1/(1 + c x^2) = Re 1/(1 + i s x), s = sqrt(c); differentiate the simple pole.
fn rational_derivative(c: f64, k: usize, x: f64) -> f64 {
    let s = c.sqrt();
    let z = Complex64::new(1.0, s * x).inv();
    let step = Complex64::new(0.0, -s) * z;
    let mut acc = z;
    for j in 1..=k {
        acc *= step * j as f64;
    }
    acc.re
}

/// Mean and max absolute error of one derivative order over a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub order: usize,
    pub e_mean: f64,
    pub e_max: f64,
    pub points: usize,
}

impl ErrorStats {
    pub fn from_errors(order: usize, errors: &[f64]) -> Self {
        let e_max = errors.iter().fold(0.0, |m: f64, e| m.max(*e));
        let e_mean = errors.iter().sum::<f64>() / errors.len() as f64;
        Self {
            order,
            e_mean,
            e_max,
            points: errors.len(),
        }
    }

    /// Errors of `approx` against exact derivative values at `xs`.
    pub fn measure(order: usize, approx: &ChebSeries, exact: &[f64], xs: &[f64]) -> Self {
        let errors: Vec<f64> = xs
            .iter()
            .zip(exact)
            .map(|(&x, &e)| (clenshaw(approx.coeffs(), x) - e).abs())
            .collect();
        Self::from_errors(order, &errors)
    }
}

pub fn equispaced_points(count: usize) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count).map(|i| -1.0 + 2.0 * i as f64 / last).collect()
}

pub fn random_points(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Per-order error statistics of one fit under one strategy.
pub fn derivative_errors(
    problem: &Problem,
    fit: &FitResult,
    strategy: Strategy,
    max_order: usize,
    xs: &[f64],
    exact: &[Vec<f64>],
) -> Result<Vec<ErrorStats>> {
    let chain = derivative_chain(problem, fit, max_order, strategy)?;
    Ok(chain
        .iter()
        .map(|d| ErrorStats::measure(d.order(), d.series(), &exact[d.order()], xs))
        .collect())
}

fn exact_table(function: TestFunction, max_order: usize, xs: &[f64]) -> Vec<Vec<f64>> {
    (0..=max_order)
        .map(|k| xs.iter().map(|&x| function.derivative(k, x)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table2Row {
    pub grid_points: usize,
    pub strategy: Strategy,
    pub stats: ErrorStats,
}

/// Grid parameter of the derivative-table experiment (67 points, step 0.03).
pub const TABLE2_N: usize = 66;

/// `f1` on 67 equispaced nodes, orders 0..=4. Errors on the 67-point grid
/// itself (S2) and on a 201-point grid (S2 and S1).
pub fn run_table2() -> Result<Vec<Table2Row>> {
    let function = TestFunction::F1;
    let problem = Problem::build(TABLE2_N)?;
    let fit = problem.fit_fn(|x| function.eval(x))?;
    let mut rows = Vec::new();
    for (grid_points, strategies) in [(67, &[Strategy::S2][..]), (201, &[Strategy::S2, Strategy::S1][..])] {
        let xs = equispaced_points(grid_points);
        let exact = exact_table(function, MAX_ORDER, &xs);
        for &strategy in strategies {
            for stats in derivative_errors(&problem, &fit, strategy, MAX_ORDER, &xs, &exact)? {
                rows.push(Table2Row {
                    grid_points,
                    strategy,
                    stats,
                });
            }
        }
    }
    Ok(rows)
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = format!("# function=f1 n={TABLE2_N}\ngrid_points,strategy,order,e_mean,e_max\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.5e},{:.5e}",
            row.grid_points,
            row.strategy.name(),
            row.stats.order,
            row.stats.e_mean,
            row.stats.e_max
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub function: TestFunction,
    pub n_list: Vec<usize>,
    pub points: usize,
    pub seed: u64,
    pub strategies: Vec<Strategy>,
    pub max_order: usize,
}

impl SweepConfig {
    /// `n = 50k`, `k = 1..=k_max`.
    pub fn standard(function: TestFunction, k_max: usize, points: usize, seed: u64) -> Self {
        Self {
            function,
            n_list: (1..=k_max).map(|k| 50 * k).collect(),
            points,
            seed,
            strategies: vec![Strategy::S1, Strategy::S2],
            max_order: MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub strategy: Strategy,
    pub stats: ErrorStats,
}

/// Error statistics for every `(n, strategy, order)` at the configured
/// random points. Grids are processed in parallel; rows come back in
/// `n_list` order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let xs = random_points(cfg.points, cfg.seed);
    let exact = exact_table(cfg.function, cfg.max_order, &xs);
    let per_n: Vec<Result<Vec<SweepRow>>> = cfg
        .n_list
        .par_iter()
        .map(|&n| {
            let problem = Problem::build(n)?;
            let fit = problem.fit_fn(|x| cfg.function.eval(x))?;
            let mut rows = Vec::new();
            for &strategy in &cfg.strategies {
                let stats = derivative_errors(&problem, &fit, strategy, cfg.max_order, &xs, &exact)?;
                rows.extend(stats.into_iter().map(|stats| SweepRow { n, strategy, stats }));
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn sweep_csv(cfg: &SweepConfig, rows: &[SweepRow]) -> String {
    let mut out = format!(
        "# function={} points={} seed={}\nn,order,strategy,e_mean,e_max\n",
        cfg.function.name(),
        cfg.points,
        cfg.seed
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.5e},{:.5e}",
            row.n,
            row.stats.order,
            row.strategy.name(),
            row.stats.e_mean,
            row.stats.e_max
        );
    }
    out
}

/// Grids of the condition-number table.
pub const TABLE1_N: [usize; 5] = [100, 500, 1000, 5000, 10000];
/// Additional grids of the full table; large, so opt-in.
pub const TABLE1_EXTENDED_N: [usize; 2] = [50000, 100000];

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsOutput {
    pub reports: Vec<BoundReport>,
    pub regression: RegressionResult,
}

pub fn run_bounds(n_list: &[usize]) -> Result<BoundsOutput> {
    let reports: Vec<BoundReport> = n_list
        .par_iter()
        .map(|&n| Problem::build(n).map(|p| BoundReport::from_problem(&p)))
        .collect::<Result<_>>()?;
    let regression = loglog_regression(&reports)?;
    Ok(BoundsOutput {
        reports,
        regression,
    })
}

pub fn bounds_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from("n,m,p,r,kappa_1,inv_norm_1,b_n\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{:.5e},{:.5e},{:.5e}",
            r.n, r.cfg.m, r.cfg.p, r.cfg.r, r.kappa_1, r.inv_norm_1, r.b_n
        );
    }
    out
}

/// Plot data for the log-log fit: observed and fitted `ln B_n`.
pub fn regression_csv(reg: &RegressionResult) -> String {
    let mut out = format!(
        "# slope={:.5e} intercept={:.5e}\nln_n,ln_b_n,ln_b_n_fit\n",
        reg.slope, reg.intercept
    );
    for &(x, y) in &reg.points {
        let _ = writeln!(out, "{:.5e},{:.5e},{:.5e}", x, y, reg.predict_ln(x));
    }
    out
}

pub fn run_nodal_norms(n_list: &[usize]) -> Result<Vec<NodalNorms>> {
    n_list
        .par_iter()
        .map(|&n| nodal_norms(&Problem::build(n)?))
        .collect()
}

pub fn nodal_csv(rows: &[NodalNorms]) -> String {
    let mut out = String::from("n,omega_m_sup,omega_r_sup,ratio\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.5e},{:.5e},{:.5e}",
            r.n,
            r.omega_m_sup,
            r.omega_r_sup,
            r.ratio()
        );
    }
    out
}

pub fn coefficients_csv(header: &str, series: &ChebSeries) -> String {
    let mut out = format!("# {header}\nindex,coefficient\n");
    for (k, c) in series.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{k},{c:.5e}");
    }
    out
}

/// `(x, y)` plot data.
pub fn xy_csv(x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    let mut out = format!("{x_label},{y_label}\n");
    for (x, y) in points {
        let _ = writeln!(out, "{x:.5e},{y:.5e}");
    }
    out
}
