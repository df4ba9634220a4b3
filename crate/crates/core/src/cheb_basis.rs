//! Chebyshev polynomials of the first and second kind and Chebyshev series.

use crate::error::{Error, Result};

/// Within this distance of ±1 the trigonometric forms are replaced by the
/// three-term recurrence (the `U_k` quotient is singular at the endpoints).
pub const ENDPOINT_BAND: f64 = 1e-8;

fn check_domain(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 {
        return Err(Error::Domain { x });
    }
    Ok(())
}

/// `T_k(x) = cos(k arccos x)`.
pub fn eval_t(k: usize, x: f64) -> Result<f64> {
    check_domain(x)?;
    if x.abs() == 1.0 {
        return Ok(if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 });
    }
    if 1.0 - x.abs() <= ENDPOINT_BAND {
        return Ok(t_recurrence(k, x));
    }
    Ok((k as f64 * x.acos()).cos())
}

/// `U_k(x) = sin((k+1) arccos x) / sin(arccos x)`, with `U_k(±1) = (±1)^k (k+1)`.
pub fn eval_u(k: usize, x: f64) -> Result<f64> {
    check_domain(x)?;
    if x.abs() == 1.0 {
        let v = (k + 1) as f64;
        return Ok(if x < 0.0 && k % 2 == 1 { -v } else { v });
    }
    if 1.0 - x.abs() <= ENDPOINT_BAND {
        return Ok(u_recurrence(k, x));
    }
    let theta = x.acos();
    Ok(((k + 1) as f64 * theta).sin() / theta.sin())
}

/// `[U_0(x), ..., U_{len-1}(x)]`, with the same branch rules as [`eval_u`].
pub fn eval_u_row(len: usize, x: f64) -> Result<Vec<f64>> {
    check_domain(x)?;
    if x.abs() == 1.0 || 1.0 - x.abs() <= ENDPOINT_BAND {
        return (0..len).map(|k| eval_u(k, x)).collect();
    }
    let theta = x.acos();
    let s = theta.sin();
    Ok((0..len)
        .map(|k| ((k + 1) as f64 * theta).sin() / s)
        .collect())
}

fn t_recurrence(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn u_recurrence(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients `a_0..a_r` of `sum a_k T_k(x)`. The length fixes the degree
/// bound `r`; trailing zeros are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Degenerate("a Chebyshev series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(degree_bound: usize) -> Self {
        Self {
            coeffs: vec![0.0; degree_bound + 1],
        }
    }

    /// The series of `T_k` with degree bound `degree_bound >= k`.
    pub fn basis(k: usize, degree_bound: usize) -> Self {
        let mut s = Self::zeros(degree_bound.max(k));
        s.coeffs[k] = 1.0;
        s
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// `alpha * self + beta * other`, zero-padded to the longer length.
    pub fn linear_combination(&self, alpha: f64, other: &ChebSeries, beta: f64) -> ChebSeries {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0.0);
                let b = other.coeffs.get(i).copied().unwrap_or(0.0);
                alpha * a + beta * b
            })
            .collect();
        ChebSeries { coeffs }
    }

    pub fn scaled(&self, s: f64) -> ChebSeries {
        ChebSeries {
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_series(self, x)
    }
}

/// Clenshaw evaluation of `sum a_k T_k(x)`.
pub fn eval_series(s: &ChebSeries, x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(clenshaw(&s.coeffs, x))
}

pub(crate) fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    let two_x = 2.0 * x;
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + x * b1 - b2
}

/// Coefficients of the derivative in the same basis, same length.
///
/// `a'_0 = sum_j (2j+1) a_{2j+1}` and `a'_i = 2 sum_j (i+2j+1) a_{i+2j+1}`;
/// the sums run over indices of the same parity as `i + 1` and are
/// accumulated from the top index down.
pub fn diff_coeffs(s: &ChebSeries) -> ChebSeries {
    let a = &s.coeffs;
    let len = a.len();
    let mut out = vec![0.0; len];
    // tail[i] = sum over k = i+1, i+3, ... <= r of k a_k
    let mut tail = vec![0.0; len + 2];
    for i in (0..len).rev() {
        let next = if i + 1 < len { (i + 1) as f64 * a[i + 1] } else { 0.0 };
        tail[i] = next + tail[i + 2];
    }
    for i in 0..len {
        out[i] = if i == 0 { tail[0] } else { 2.0 * tail[i] };
    }
    ChebSeries { coeffs: out }
}

/// `nu`-fold differentiation. Orders above the degree bound give the zero series.
pub fn diff_coeffs_nu(s: &ChebSeries, nu: usize) -> ChebSeries {
    if nu > s.degree_bound() {
        return ChebSeries::zeros(s.degree_bound());
    }
    let mut cur = s.clone();
    for _ in 0..nu {
        cur = diff_coeffs(&cur);
    }
    cur
}
