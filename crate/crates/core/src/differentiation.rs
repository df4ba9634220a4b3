//! Global numerical differentiation of equispaced data.
//!
//! Two routes lead to the Chebyshev coefficients of the derivative of a fit:
//!
//! * [`Strategy::S1`] evaluates `P'(x) = sum_j j a_j U_{j-1}(x)` on the grid
//!   and pushes those values through the operator again (the operator
//!   reproduces polynomials of degree `<= r`, so nothing is lost in exact
//!   arithmetic). Higher orders repeat the evaluate/refit cycle.
//! * [`Strategy::S2`] applies the coefficient recurrence directly, with no
//!   linear solve.

use crate::cheb_basis::{diff_coeffs, diff_coeffs_nu, eval_u_row, ChebSeries};
use crate::error::{Error, Result};
use crate::operator::{FitResult, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    S1,
    S2,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::S1 => "s1",
            Strategy::S2 => "s2",
        }
    }
}

/// Derivative of order `order` of a CMCLS fit, in the first-kind basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeFit {
    order: usize,
    series: ChebSeries,
    strategy: Strategy,
    base: FitResult,
}

impl DerivativeFit {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn base(&self) -> &FitResult {
        &self.base
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.series.eval(x)
    }
}

pub fn evaluate_derivative(d: &DerivativeFit, x: f64) -> Result<f64> {
    d.evaluate(x)
}

fn zero_beyond_degree(base: &FitResult, nu: usize, strategy: Strategy) -> DerivativeFit {
    let r = base.config().r;
    log::warn!("derivative order {nu} exceeds the degree {r}; returning the zero series");
    DerivativeFit {
        order: nu,
        series: ChebSeries::zeros(r),
        strategy,
        base: base.clone(),
    }
}

/// Order-`nu` derivative through the coefficient recurrence. `nu = 0`
/// returns the fit itself.
pub fn derivative_s2(base: &FitResult, nu: usize) -> DerivativeFit {
    if nu > base.config().r {
        return zero_beyond_degree(base, nu, Strategy::S2);
    }
    DerivativeFit {
        order: nu,
        series: diff_coeffs_nu(base.series(), nu),
        strategy: Strategy::S2,
        base: base.clone(),
    }
}

/// Order-`nu` derivative through `nu` evaluate/refit cycles on the grid of
/// `problem`.
pub fn derivative_s1(problem: &Problem, base: &FitResult, nu: usize) -> Result<DerivativeFit> {
    check_same_grid(problem, base)?;
    if nu > base.config().r {
        return Ok(zero_beyond_degree(base, nu, Strategy::S1));
    }
    let mut series = base.series().clone();
    for _ in 0..nu {
        let values = derivative_on_grid(problem, &series)?;
        series = problem.fit(&values)?.series().clone();
    }
    Ok(DerivativeFit {
        order: nu,
        series,
        strategy: Strategy::S1,
        base: base.clone(),
    })
}

pub fn derivative(
    problem: &Problem,
    base: &FitResult,
    nu: usize,
    strategy: Strategy,
) -> Result<DerivativeFit> {
    match strategy {
        Strategy::S1 => derivative_s1(problem, base, nu),
        Strategy::S2 => Ok(derivative_s2(base, nu)),
    }
}

/// Derivatives of orders `0..=max_order`, each built from the previous one.
/// For S1 this performs `max_order` refits in total.
pub fn derivative_chain(
    problem: &Problem,
    base: &FitResult,
    max_order: usize,
    strategy: Strategy,
) -> Result<Vec<DerivativeFit>> {
    if strategy == Strategy::S1 {
        check_same_grid(problem, base)?;
    }
    let r = base.config().r;
    let mut out = Vec::with_capacity(max_order + 1);
    let mut series = base.series().clone();
    for nu in 0..=max_order {
        if nu > 0 {
            series = if nu > r {
                ChebSeries::zeros(r)
            } else {
                match strategy {
                    Strategy::S1 => {
                        let values = derivative_on_grid(problem, &series)?;
                        problem.fit(&values)?.series().clone()
                    }
                    Strategy::S2 => diff_coeffs(&series),
                }
            };
        }
        out.push(DerivativeFit {
            order: nu,
            series: series.clone(),
            strategy,
            base: base.clone(),
        });
    }
    Ok(out)
}

fn check_same_grid(problem: &Problem, base: &FitResult) -> Result<()> {
    if base.config() != problem.config() {
        return Err(Error::Degenerate(format!(
            "fit was computed for n = {}, problem has n = {}",
            base.config().n,
            problem.config().n
        )));
    }
    Ok(())
}

fn derivative_on_grid(problem: &Problem, series: &ChebSeries) -> Result<Vec<f64>> {
    derivative_values_via_u(series, problem.grid().values())
}

/// Values of the derivative of `series` at `xs` through the second-kind
/// expansion `sum_{j=1}^{r} j a_j U_{j-1}(x)`.
pub fn derivative_values_via_u(series: &ChebSeries, xs: &[f64]) -> Result<Vec<f64>> {
    let a = series.coeffs();
    let r = a.len() - 1;
    xs.iter()
        .map(|&x| {
            let u = eval_u_row(r, x)?;
            Ok((1..=r).map(|j| j as f64 * a[j] * u[j - 1]).sum())
        })
        .collect()
}
