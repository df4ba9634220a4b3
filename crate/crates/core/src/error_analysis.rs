//! Operator-norm bound, closed-form error bounds, and the pointwise error
//! representation of the CMCLS operator (first-kind Chebyshev basis, so the
//! basis-norm constant is one).

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::grid::{Config, NodeKind};
use crate::interp::{dense_grid, nodal_sup_norm, LagrangeBasisSet};
use crate::operator::Problem;

/// `kappa_1(M)`, `||M^-1||_1` and `B_n = 2 (r+1) kappa_1 + (m+1) ||M^-1||_1`
/// for one grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub cfg: Config,
    pub kappa_1: f64,
    pub inv_norm_1: f64,
    pub b_n: f64,
}

impl BoundReport {
    pub fn from_parts(cfg: Config, kappa_1: f64, inv_norm_1: f64) -> Self {
        Self {
            n: cfg.n,
            cfg,
            kappa_1,
            inv_norm_1,
            b_n: combine_bound(&cfg, kappa_1, inv_norm_1),
        }
    }

    pub fn from_problem(problem: &Problem) -> Self {
        Self::from_parts(*problem.config(), problem.kappa(), problem.inv_norm())
    }
}

pub fn combine_bound(cfg: &Config, kappa_1: f64, inv_norm_1: f64) -> f64 {
    2.0 * (cfg.r + 1) as f64 * kappa_1 + (cfg.m + 1) as f64 * inv_norm_1
}

pub fn norm_bound(n: usize) -> Result<BoundReport> {
    Ok(BoundReport::from_problem(&Problem::build(n)?))
}

/// Least-squares line through `(ln n, ln B_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<(f64, f64)>,
}

impl RegressionResult {
    pub fn predict_ln(&self, ln_n: f64) -> f64 {
        self.intercept + self.slope * ln_n
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.points
            .iter()
            .map(|&(x, y)| (y - self.predict_ln(x)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn loglog_regression(reports: &[BoundReport]) -> Result<RegressionResult> {
    let points: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| ((r.n as f64).ln(), r.b_n.ln()))
        .collect();
    fit_line(points)
}

/// Ordinary least squares `y = intercept + slope x`.
pub fn fit_line(points: Vec<(f64, f64)>) -> Result<RegressionResult> {
    if let Some(bad) = points.iter().position(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::NonFinite { index: bad });
    }
    let k = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if points.len() < 2 || sxx == 0.0 {
        return Err(Error::Degenerate(
            "regression needs at least two distinct abscissae".into(),
        ));
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = sxy / sxx;
    Ok(RegressionResult {
        slope,
        intercept: mean_y - slope * mean_x,
        points,
    })
}

/// Smoothness information for the Jackson-type bound.
pub enum JacksonInput<'a> {
    /// Modulus of continuity `delta -> omega_f(delta)`; gives the `k = 0` bound.
    Modulus(&'a dyn Fn(f64) -> f64),
    /// `||f^(k)||_inf` for some `1 <= k <= r`.
    DerivativeSup { k: usize, sup: f64 },
}

/// Upper bound on `||f - P[f]||_inf`:
///
/// * `(1 + B_n) omega_f(pi / (r+1))` from a modulus of continuity,
/// * `(pi/2)^k (1 + B_n) ||f^(k)|| / ((r+1) r ... (r-k+2))` from a derivative sup.
pub fn jackson_bound(report: &BoundReport, input: JacksonInput<'_>) -> Result<f64> {
    let r = report.cfg.r;
    match input {
        JacksonInput::Modulus(omega) => {
            Ok((1.0 + report.b_n) * omega(std::f64::consts::PI / (r + 1) as f64))
        }
        JacksonInput::DerivativeSup { k, sup } => {
            if k == 0 || k > r {
                return Err(Error::OrderOutOfRange { order: k, max: r });
            }
            if sup < 0.0 {
                return Err(Error::Degenerate("derivative sup must be nonnegative".into()));
            }
            // (r+1) r ... (r-k+2): k factors
            let falling: f64 = (0..k).map(|i| ((r + 1 - i) as f64).ln()).sum();
            let ln = k as f64 * FRAC_PI_2.ln() + (1.0 + report.b_n).ln() + sup.ln() - falling;
            Ok(ln.exp())
        }
    }
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `prod_{j<nu} (degree^2 - j^2) / prod_{j<nu} (2j+1)`, the iterated Markov
/// factor, as a logarithm.
pub fn ln_markov_factor(degree: usize, nu: usize) -> f64 {
    let d2 = (degree as f64).powi(2);
    (0..nu)
        .map(|j| {
            let j = j as f64;
            (d2 - j * j).ln() - (2.0 * j + 1.0).ln()
        })
        .sum()
}

pub fn markov_factor(degree: usize, nu: usize) -> f64 {
    ln_markov_factor(degree, nu).exp()
}

/// Inputs of the derivative-error bound other than the grid itself.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeBoundInputs {
    /// `||f^(r)||_inf`.
    pub f_sup_r: f64,
    /// `||f^(r+1)||_inf`.
    pub f_sup_r1: f64,
    /// `||omega_r||_inf` for the nodes `X'_m ∪ X'''_p`.
    pub omega_r_sup: f64,
    /// `||ell_{k,p}||_inf`, k = 0..p.
    pub ell_sups: Vec<f64>,
}

/// Bound on `||f^(nu) - P^(nu)[f]||_inf`:
///
/// ```text
/// Mk(r+1, nu) ||omega_r|| ||f^(r+1)|| / (nu! (r+1-nu)!)
///   + Mk(r, nu) sum_k ||ell_{k,p}|| (pi/2)^r (1 + B_n) ||f^(r)|| / (r+1)!
/// ```
///
/// where `Mk(d, nu) = prod_{j<nu} (d^2 - j^2) / prod_{j<nu} (2j+1)`.
pub fn derivative_error_bound(
    report: &BoundReport,
    nu: usize,
    inputs: &DerivativeBoundInputs,
) -> Result<f64> {
    let r = report.cfg.r;
    if nu == 0 || nu > r {
        return Err(Error::OrderOutOfRange { order: nu, max: r });
    }
    let sups = [inputs.f_sup_r, inputs.f_sup_r1, inputs.omega_r_sup];
    if sups.iter().chain(&inputs.ell_sups).any(|v| *v < 0.0 || v.is_nan()) {
        return Err(Error::Degenerate("sup-norm inputs must be nonnegative".into()));
    }
    let ell_sum: f64 = inputs.ell_sups.iter().sum();

    let first = (ln_markov_factor(r + 1, nu) + inputs.omega_r_sup.ln() + inputs.f_sup_r1.ln()
        - ln_factorial(nu)
        - ln_factorial(r + 1 - nu))
    .exp();
    let second = (ln_markov_factor(r, nu)
        + ell_sum.ln()
        + r as f64 * FRAC_PI_2.ln()
        + (1.0 + report.b_n).ln()
        + inputs.f_sup_r.ln()
        - ln_factorial(r + 1))
    .exp();
    Ok(first + second)
}

/// Lagrange basis on `X'_m ∪ X'''_p` and the positions of the secondary nodes
/// inside it.
pub fn combined_basis(problem: &Problem) -> Result<(LagrangeBasisSet, Vec<usize>)> {
    let union = problem.primary().union(problem.secondary())?;
    let positions = problem
        .secondary()
        .indices()
        .iter()
        .map(|i| union.indices().binary_search(i).expect("secondary node in union"))
        .collect();
    Ok((
        LagrangeBasisSet::new(union.to_node_set(problem.grid(), NodeKind::Combined)),
        positions,
    ))
}

/// Both sides of the error representation
/// `f(x) - P[f](x) = R_r[f](x) + sum_j ell_{j,p}(x) (f - P[f])(x'''_j)`,
/// evaluated independently at every point of `xs`. Returns the largest
/// absolute difference.
///
/// `P_r` is the Lagrange interpolant of the exact `f` on `X'_m ∪ X'''_p`;
/// `P[f]` is the CMCLS fit of `samples`.
pub fn error_representation_check(
    problem: &Problem,
    samples: &[f64],
    f_at: impl Fn(f64) -> f64,
    xs: &[f64],
) -> Result<f64> {
    let fit = problem.fit(samples)?;
    let (basis, secondary_pos) = combined_basis(problem)?;
    let exact: Vec<f64> = basis.nodes().values().iter().map(|&x| f_at(x)).collect();
    let remainder_at_secondary: Vec<f64> = problem
        .secondary_nodes()
        .values()
        .iter()
        .map(|&x| Ok(f_at(x) - fit.evaluate(x)?))
        .collect::<Result<_>>()?;

    let mut worst: f64 = 0.0;
    for &x in xs {
        let fx = f_at(x);
        let lhs = fx - fit.evaluate(x)?;
        let interp_remainder = fx - basis.interpolate(&exact, x)?;
        let ell = basis.fundamentals_at(x);
        let correction: f64 = secondary_pos
            .iter()
            .zip(&remainder_at_secondary)
            .map(|(&pos, &rem)| ell[pos] * rem)
            .sum();
        worst = worst.max((lhs - (interp_remainder + correction)).abs());
    }
    Ok(worst)
}

/// Dense-grid sup-norms of the nodal polynomials `omega_m` (on `X'_m`) and
/// `omega_r` (on `X'_m ∪ X'''_p`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalNorms {
    pub n: usize,
    pub omega_m_sup: f64,
    pub omega_r_sup: f64,
}

impl NodalNorms {
    pub fn ratio(&self) -> f64 {
        self.omega_r_sup / self.omega_m_sup
    }
}

pub fn nodal_norms(problem: &Problem) -> Result<NodalNorms> {
    Ok(NodalNorms {
        n: problem.config().n,
        omega_m_sup: nodal_sup_norm(&problem.primary_nodes()),
        omega_r_sup: nodal_sup_norm(&problem.combined_nodes()?),
    })
}

/// Dense-grid `||ell_{k,p}||_inf` for the fundamentals of the secondary nodes
/// in the combined basis.
pub fn secondary_fundamental_sups(problem: &Problem) -> Result<Vec<f64>> {
    let (basis, positions) = combined_basis(problem)?;
    let pts = dense_grid(basis.nodes().values());
    positions
        .into_iter()
        .map(|pos| {
            pts.iter().try_fold(0.0f64, |best, &x| {
                Ok(best.max(basis.fundamental_at(pos, x)?.abs()))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_recombines_exactly() {
        let report = norm_bound(100).unwrap();
        assert_eq!(report.cfg.r, 32);
        assert_eq!(
            report.b_n,
            2.0 * 33.0 * report.kappa_1 + 23.0 * report.inv_norm_1
        );
        let again = BoundReport::from_parts(report.cfg, report.kappa_1, report.inv_norm_1);
        assert_eq!(again.b_n.to_bits(), report.b_n.to_bits());
    }

    #[test]
    fn regression_on_power_law() {
        let pts: Vec<(f64, f64)> = [10.0f64, 20.0, 50.0, 300.0]
            .iter()
            .map(|&n| (n.ln(), (3.0 * n * n).ln()))
            .collect();
        let fit = fit_line(pts).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(fit.max_abs_residual() < 1e-12);

        let two = fit_line(vec![(1.0, 2.0), (3.0, 7.0)]).unwrap();
        assert!((two.slope - 2.5).abs() < 1e-15 && (two.intercept + 0.5).abs() < 1e-15);
        assert!(fit_line(vec![(1.0, 2.0), (1.0, 3.0)]).is_err());
        assert!(fit_line(vec![(1.0, 2.0)]).is_err());
    }

    #[test]
    fn jackson_examples() {
        let report = norm_bound(100).unwrap();
        let zero = jackson_bound(&report, JacksonInput::Modulus(&|_| 0.0)).unwrap();
        assert_eq!(zero, 0.0);
        let k1 = jackson_bound(&report, JacksonInput::DerivativeSup { k: 1, sup: 1.0 }).unwrap();
        let expected = FRAC_PI_2 * (1.0 + report.b_n) / 33.0;
        assert!((k1 - expected).abs() <= 1e-12 * expected);
        assert!(jackson_bound(&report, JacksonInput::DerivativeSup { k: 33, sup: 1.0 }).is_err());
        assert!(jackson_bound(&report, JacksonInput::DerivativeSup { k: 0, sup: 1.0 }).is_err());
    }

    #[test]
    fn markov_first_term() {
        assert!((markov_factor(33, 1) - 33.0 * 33.0).abs() < 1e-9);
        let expected = (33.0f64.powi(2)) * (33.0f64.powi(2) - 1.0) / 3.0;
        assert!((markov_factor(33, 2) - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn derivative_bound_zero_inputs() {
        let report = norm_bound(100).unwrap();
        let inputs = DerivativeBoundInputs {
            f_sup_r: 0.0,
            f_sup_r1: 0.0,
            omega_r_sup: 0.0,
            ell_sups: vec![0.0; 10],
        };
        assert_eq!(derivative_error_bound(&report, 1, &inputs).unwrap(), 0.0);
        assert!(derivative_error_bound(&report, 0, &inputs).is_err());
        assert!(derivative_error_bound(&report, 33, &inputs).is_err());
    }

    #[test]
    fn representation_exact_for_polynomials() {
        let p = Problem::build(100).unwrap();
        let q = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(7) - x.powi(20);
        let xs: Vec<f64> = (0..101).map(|i| -1.0 + 0.02 * i as f64).collect();
        let d = error_representation_check(&p, &p.sample(q), q, &xs).unwrap();
        assert!(d <= 1e-9, "{d}");
        let nodes = p.primary_nodes();
        let f = |x: f64| (5.0 * x).cos() / (1.0 + x * x);
        let d = error_representation_check(&p, &p.sample(f), f, nodes.values()).unwrap();
        assert!(d <= 1e-9, "{d}");
    }
}
