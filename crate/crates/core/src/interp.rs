//! Lagrange interpolation in barycentric form, fundamental and nodal
//! polynomials, and dense-grid sup-norm estimates.

use crate::error::{Error, Result};
use crate::grid::NodeSet;

/// Points of the equispaced grid used to estimate sup-norms on `[-1, 1]`.
pub const DENSE_GRID_POINTS: usize = 5001;

/// Nodes with their barycentric weights `w_k ∝ 1 / prod_{j != k} (x_k - x_j)`.
///
/// Weights are normalised so the largest has magnitude one.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangeBasisSet {
    nodes: NodeSet,
    weights: Vec<f64>,
}

impl LagrangeBasisSet {
    pub fn new(nodes: NodeSet) -> Self {
        let x = nodes.values();
        // log|prod| and sign, so large equispaced sets do not overflow
        let logs: Vec<(f64, bool)> = x
            .iter()
            .enumerate()
            .map(|(k, &xk)| {
                let mut log_mag = 0.0;
                let mut negative = false;
                for (j, &xj) in x.iter().enumerate() {
                    if j != k {
                        let d = xk - xj;
                        log_mag += d.abs().ln();
                        negative ^= d < 0.0;
                    }
                }
                (-log_mag, negative)
            })
            .collect();
        let max_log = logs.iter().fold(f64::NEG_INFINITY, |m, &(l, _)| m.max(l));
        let weights = logs
            .into_iter()
            .map(|(l, neg)| {
                let w = (l - max_log).exp();
                if neg {
                    -w
                } else {
                    w
                }
            })
            .collect();
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn node_hit(&self, x: f64) -> Option<usize> {
        self.nodes.values().iter().position(|&xk| xk == x)
    }

    /// Second-form barycentric interpolant of `values` at `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> Result<f64> {
        barycentric_interpolate(self, values, x)
    }

    /// `ell_k(x)`.
    pub fn fundamental_at(&self, k: usize, x: f64) -> Result<f64> {
        fundamental_at(self, k, x)
    }

    /// All fundamentals at `x`.
    pub fn fundamentals_at(&self, x: f64) -> Vec<f64> {
        if let Some(hit) = self.node_hit(x) {
            return (0..self.len()).map(|k| if k == hit { 1.0 } else { 0.0 }).collect();
        }
        let terms: Vec<f64> = self
            .nodes
            .values()
            .iter()
            .zip(&self.weights)
            .map(|(&xk, &w)| w / (x - xk))
            .collect();
        let denom: f64 = terms.iter().sum();
        terms.into_iter().map(|t| t / denom).collect()
    }
}

pub fn barycentric_interpolate(basis: &LagrangeBasisSet, values: &[f64], x: f64) -> Result<f64> {
    if values.len() != basis.len() {
        return Err(Error::LengthMismatch {
            expected: basis.len(),
            got: values.len(),
        });
    }
    if let Some(hit) = basis.node_hit(x) {
        return Ok(values[hit]);
    }
    let (mut num, mut den) = (0.0, 0.0);
    for ((&xk, &w), &v) in basis.nodes.values().iter().zip(&basis.weights).zip(values) {
        let t = w / (x - xk);
        num += t * v;
        den += t;
    }
    Ok(num / den)
}

pub fn fundamental_at(basis: &LagrangeBasisSet, k: usize, x: f64) -> Result<f64> {
    if k >= basis.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: basis.len(),
        });
    }
    if let Some(hit) = basis.node_hit(x) {
        return Ok(if hit == k { 1.0 } else { 0.0 });
    }
    let mut den = 0.0;
    let mut mine = 0.0;
    for (j, (&xj, &w)) in basis.nodes.values().iter().zip(&basis.weights).enumerate() {
        let t = w / (x - xj);
        den += t;
        if j == k {
            mine = t;
        }
    }
    Ok(mine / den)
}

/// `prod_k (x - x_k)`.
pub fn nodal_polynomial_at(nodes: &NodeSet, x: f64) -> f64 {
    nodes.values().iter().map(|&xk| x - xk).product()
}

/// Equispaced evaluation grid of [`DENSE_GRID_POINTS`] points merged with
/// `extra` (sorted, deduplicated).
pub fn dense_grid(extra: &[f64]) -> Vec<f64> {
    let last = (DENSE_GRID_POINTS - 1) as f64;
    let mut pts: Vec<f64> = (0..DENSE_GRID_POINTS)
        .map(|i| -1.0 + 2.0 * i as f64 / last)
        .chain(extra.iter().copied())
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// `max |f|` over [`dense_grid`]`(extra)`.
pub fn sup_norm(f: impl Fn(f64) -> f64, extra: &[f64]) -> f64 {
    dense_grid(extra)
        .into_iter()
        .map(|x| f(x).abs())
        .fold(0.0, f64::max)
}

/// Dense-grid estimate of `||omega||_inf` for the nodal polynomial of `nodes`.
pub fn nodal_sup_norm(nodes: &NodeSet) -> f64 {
    sup_norm(|x| nodal_polynomial_at(nodes, x), nodes.values())
}
