//! Assembly and solution of the constrained mock-Chebyshev least squares
//! problem
//!
//! ```text
//! minimise ||V a - b||_2  subject to  C a = d
//! ```
//!
//! through the KKT system `[[2 V^T V, C^T], [C, 0]] [a; z] = [2 V^T b; d]`.
//! `V` holds the first-kind Chebyshev basis on the whole grid and `C` the
//! rows of `V` at the mock-Chebyshev nodes.
//!
//! The grid stays sorted; `C` is gathered from `V` through the primary
//! selection instead of reordering the grid so the constrained nodes come
//! first. Row order in `C` does not change the solution for `a`.

use crate::cheb_basis::{clenshaw, eval_t, ChebSeries};
use crate::dense_linalg::{condition_number_1, one_norm, DenseMatrix, LuFactorization};
use crate::error::{Error, Result};
use crate::grid::{
    equispaced_nodes, mock_chebyshev_select, node_counts, secondary_mock_chebyshev_select, Config,
    NodeKind, NodeSet, Selection,
};

/// Relative KKT residual above which a fit is flagged as inaccurate.
pub const KKT_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// An assembled and factored CMCLS problem for one grid.
///
/// Immutable after construction; fits only read from it.
#[derive(Debug, Clone)]
pub struct Problem {
    cfg: Config,
    grid: NodeSet,
    primary: Selection,
    secondary: Selection,
    vandermonde: DenseMatrix,
    constraints: DenseMatrix,
    kkt: DenseMatrix,
    factor: LuFactorization,
    kappa: f64,
    inv_norm: f64,
}

impl Problem {
    pub fn build(n: usize) -> Result<Self> {
        let cfg = node_counts(n)?;
        let grid = equispaced_nodes(n)?;
        let primary = mock_chebyshev_select(&grid, cfg.m)?;
        let secondary = secondary_mock_chebyshev_select(&grid, &primary, &cfg)?;

        let cols = cfg.r + 1;
        let mut v = Vec::with_capacity(grid.len() * cols);
        for &x in grid.values() {
            for j in 0..cols {
                v.push(eval_t(j, x)?);
            }
        }
        let vandermonde = DenseMatrix::new(grid.len(), cols, v)?;
        let constraints = vandermonde.gather_rows(primary.indices())?;

        let size = cfg.kkt_size();
        let mut kkt = DenseMatrix::zeros(size, size);
        kkt.set_block(0, 0, &vandermonde.gram().scaled(2.0));
        kkt.set_block(0, cols, &constraints.transpose());
        kkt.set_block(cols, 0, &constraints);

        let factor = LuFactorization::new(&kkt)?;
        let (kappa, inv_norm) = condition_number_1(&kkt)?;
        if !kappa.is_finite() || kappa >= 1.0 / f64::EPSILON {
            return Err(Error::IllConditioned { kappa });
        }

        Ok(Self {
            cfg,
            grid,
            primary,
            secondary,
            vandermonde,
            constraints,
            kkt,
            factor,
            kappa,
            inv_norm,
        })
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    pub fn grid(&self) -> &NodeSet {
        &self.grid
    }

    pub fn primary(&self) -> &Selection {
        &self.primary
    }

    pub fn secondary(&self) -> &Selection {
        &self.secondary
    }

    pub fn primary_nodes(&self) -> NodeSet {
        self.primary.to_node_set(&self.grid, NodeKind::MockChebyshev)
    }

    pub fn secondary_nodes(&self) -> NodeSet {
        self.secondary
            .to_node_set(&self.grid, NodeKind::SecondaryMockChebyshev)
    }

    /// `X'_m ∪ X'''_p`, sorted.
    pub fn combined_nodes(&self) -> Result<NodeSet> {
        let union = self.primary.union(&self.secondary)?;
        Ok(union.to_node_set(&self.grid, NodeKind::Combined))
    }

    pub fn vandermonde(&self) -> &DenseMatrix {
        &self.vandermonde
    }

    pub fn constraints(&self) -> &DenseMatrix {
        &self.constraints
    }

    pub fn kkt(&self) -> &DenseMatrix {
        &self.kkt
    }

    /// `||M||_1 ||M^-1||_1`.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `||M^-1||_1`.
    pub fn inv_norm(&self) -> f64 {
        self.inv_norm
    }

    /// Samples `f` on the grid.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.grid.values().iter().map(|&x| f(x)).collect()
    }

    pub fn fit(&self, samples: &[f64]) -> Result<FitResult> {
        let npts = self.grid.len();
        if samples.len() != npts {
            return Err(Error::LengthMismatch {
                expected: npts,
                got: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut rhs: Vec<f64> = self
            .vandermonde
            .transpose_mul_vec(samples)?
            .into_iter()
            .map(|v| 2.0 * v)
            .collect();
        rhs.extend(self.primary.indices().iter().map(|&i| samples[i]));

        let solution = self.factor.solve_vec(&rhs)?;
        let residual_norm: f64 = self
            .kkt
            .mul_vec(&solution)?
            .iter()
            .zip(&rhs)
            .map(|(a, b)| (a - b).abs())
            .sum();
        let rhs_norm: f64 = rhs.iter().map(|v| v.abs()).sum();
        if residual_norm / (1.0 + rhs_norm) > KKT_RESIDUAL_TOLERANCE {
            log::warn!(
                "KKT residual {:.3e} exceeds tolerance (n = {}, kappa = {:.3e})",
                residual_norm / (1.0 + rhs_norm),
                self.cfg.n,
                self.kappa
            );
        }

        let cols = self.cfg.r + 1;
        let multipliers = solution[cols..].to_vec();
        let mut coeffs = solution;
        coeffs.truncate(cols);
        Ok(FitResult {
            series: ChebSeries::new(coeffs)?,
            multipliers,
            cfg: self.cfg,
            residual_norm,
        })
    }

    pub fn fit_fn(&self, f: impl Fn(f64) -> f64) -> Result<FitResult> {
        self.fit(&self.sample(f))
    }

    /// Evaluates `fit` on the grid and fits those values again. For the
    /// operator this is a fixed point.
    pub fn refit_from_fit(&self, fit: &FitResult) -> Result<FitResult> {
        let values = self.evaluate_on_grid(fit.series());
        self.fit(&values)
    }

    pub(crate) fn evaluate_on_grid(&self, series: &ChebSeries) -> Vec<f64> {
        self.grid
            .values()
            .iter()
            .map(|&x| clenshaw(series.coeffs(), x))
            .collect()
    }

    /// `||M||_1`.
    pub fn kkt_one_norm(&self) -> f64 {
        one_norm(&self.kkt)
    }
}

/// Chebyshev coefficients and Lagrange multipliers of a CMCLS fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    series: ChebSeries,
    multipliers: Vec<f64>,
    cfg: Config,
    residual_norm: f64,
}

impl FitResult {
    pub fn series(&self) -> &ChebSeries {
        &self.series
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.multipliers
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// 1-norm of the KKT residual `M [a; z] - rhs`.
    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        self.series.eval(x)
    }
}
