//! Node sets on `[-1, 1]` and the mock-Chebyshev subset selections.
//!
//! The primary selection `X'_m` picks, for every Chebyshev–Lobatto node of
//! degree `m`, the nearest node of the equispaced grid `X_n`. The secondary
//! selection `X'''_p` first approximates a coarse equispaced grid with nodes of
//! the complement `X_n \ X'_m`, then takes the mock-Chebyshev subset of degree
//! `p` of that coarse grid.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest grid parameter for which `q >= 2` and `p >= 1`.
pub const MIN_GRID_PARAMETER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Equispaced,
    ChebyshevLobatto,
    MockChebyshev,
    SecondaryMockChebyshev,
    /// Sorted union of the primary and secondary mock-Chebyshev nodes.
    Combined,
}

/// Strictly increasing abscissae in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    values: Vec<f64>,
    kind: NodeKind,
}

impl NodeSet {
    pub fn new(values: Vec<f64>, kind: NodeKind) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Degenerate("empty node set".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::Domain { x: v });
            }
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Degenerate("node values must be strictly increasing".into()));
        }
        Ok(Self { values, kind })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn kind(&self) -> NodeKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Strictly increasing indices into a parent node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    parent_size: usize,
    indices: Vec<usize>,
}

impl Selection {
    pub fn new(parent_size: usize, indices: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= parent_size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: parent_size,
            });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Degenerate(
                "selection indices must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            parent_size,
            indices,
        })
    }

    pub fn parent_size(&self) -> usize {
        self.parent_size
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// Values of the selected nodes of `parent`.
    pub fn gather(&self, parent: &NodeSet) -> Vec<f64> {
        debug_assert_eq!(parent.len(), self.parent_size);
        self.indices.iter().map(|&i| parent.values[i]).collect()
    }

    pub fn to_node_set(&self, parent: &NodeSet, kind: NodeKind) -> NodeSet {
        NodeSet {
            values: self.gather(parent),
            kind,
        }
    }

    /// Sorted union with another selection of the same parent.
    pub fn union(&self, other: &Selection) -> Result<Selection> {
        if self.parent_size != other.parent_size {
            return Err(Error::LengthMismatch {
                expected: self.parent_size,
                got: other.parent_size,
            });
        }
        let mut indices: Vec<usize> = self
            .indices
            .iter()
            .chain(other.indices.iter())
            .copied()
            .collect();
        indices.sort_unstable();
        indices.dedup();
        Selection::new(self.parent_size, indices)
    }
}

/// Sizes derived from the grid parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Config {
    /// Number of grid intervals; the grid has `n + 1` nodes.
    pub n: usize,
    /// Mock-Chebyshev degree.
    pub m: usize,
    /// Secondary mock-Chebyshev degree.
    pub p: usize,
    /// Number of internal nodes of the coarse secondary grid.
    pub q: usize,
    /// Degree of the approximant, `m + p + 1`.
    pub r: usize,
}

impl Config {
    pub fn for_grid(n: usize) -> Result<Self> {
        node_counts(n)
    }

    /// Order of the KKT matrix, `(r + 1) + (m + 1)`.
    pub fn kkt_size(&self) -> usize {
        self.r + self.m + 2
    }
}

/// `m = floor(pi sqrt(n/2))`, `p = floor(pi/sqrt(2) sqrt(n/6))`, `q = floor(n/6)`
/// and `r = m + p + 1`.
pub fn node_counts(n: usize) -> Result<Config> {
    if n < MIN_GRID_PARAMETER {
        return Err(Error::Config {
            n,
            min: MIN_GRID_PARAMETER,
        });
    }
    let nf = n as f64;
    let m = mock_chebyshev_degree(n);
    let p = (PI / 2f64.sqrt() * (nf / 6.0).sqrt()).floor() as usize;
    let q = n / 6;
    let r = m + p + 1;
    debug_assert!(r <= n);
    Ok(Config { n, m, p, q, r })
}

/// Canonical mock-Chebyshev degree `floor(pi sqrt(n/2))` for a grid of `n` intervals.
pub fn mock_chebyshev_degree(n: usize) -> usize {
    (PI * (n as f64 / 2.0).sqrt()).floor() as usize
}

pub fn equispaced_nodes(n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::Config { n, min: 1 });
    }
    let nf = n as f64;
    let values = (0..=n).map(|i| -1.0 + 2.0 * i as f64 / nf).collect();
    Ok(NodeSet {
        values,
        kind: NodeKind::Equispaced,
    })
}

/// The `m + 1` extrema of `T_m`, in increasing order.
pub fn chebyshev_lobatto_nodes(m: usize) -> Result<NodeSet> {
    if m == 0 {
        return Err(Error::Config { n: m, min: 1 });
    }
    Ok(NodeSet {
        values: lobatto_targets(m),
        kind: NodeKind::ChebyshevLobatto,
    })
}

// sin(pi (2k - m) / 2m) == cos((m - k) pi / m), but exactly symmetric and
// exactly zero at the midpoint.
fn lobatto_targets(m: usize) -> Vec<f64> {
    let mf = m as f64;
    (0..=m)
        .map(|k| (PI * (2.0 * k as f64 - mf) / (2.0 * mf)).sin())
        .collect()
}

/// Index of the entry of the sorted slice `values` nearest to `target`.
/// Exact ties go to the smaller index.
pub(crate) fn nearest_index(values: &[f64], target: f64) -> usize {
    let hi = values.partition_point(|&v| v < target);
    if hi == 0 {
        return 0;
    }
    if hi == values.len() {
        return values.len() - 1;
    }
    let lo = hi - 1;
    if target - values[lo] <= values[hi] - target {
        lo
    } else {
        hi
    }
}

// Maps each target (increasing) to its nearest candidate; candidates are
// positions into `values`. Returns the chosen positions.
fn nearest_injective(values: &[f64], targets: &[f64], stage: &'static str) -> Result<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::with_capacity(targets.len());
    for &t in targets {
        let idx = nearest_index(values, t);
        if chosen.last().is_some_and(|&last| last >= idx) {
            return Err(Error::Selection {
                stage,
                target: t,
                index: idx,
            });
        }
        chosen.push(idx);
    }
    Ok(chosen)
}

/// Mock-Chebyshev subset of degree `m` of the equispaced grid.
pub fn mock_chebyshev_select(grid: &NodeSet, m: usize) -> Result<Selection> {
    if m == 0 {
        return Err(Error::Config { n: m, min: 1 });
    }
    let n = grid.len() - 1;
    if grid.kind() == NodeKind::Equispaced && n >= 1 && m != mock_chebyshev_degree(n) {
        log::warn!(
            "mock-Chebyshev degree {m} differs from the canonical floor(pi*sqrt(n/2)) = {} for n = {n}",
            mock_chebyshev_degree(n)
        );
    }
    let targets = lobatto_targets(m);
    let indices = nearest_injective(grid.values(), &targets, "mock-Chebyshev")?;
    Selection::new(grid.len(), indices)
}

/// Targets of the coarse secondary grid: `q` internal points plus the two
/// endpoints of an equispaced partition of `[-1, 1]` into `q + 1` intervals.
pub fn secondary_grid_targets(q: usize) -> Vec<f64> {
    let qf = (q + 1) as f64;
    (0..=q + 1).map(|j| -1.0 + 2.0 * j as f64 / qf).collect()
}

/// Secondary mock-Chebyshev subset `X'''_p`, disjoint from `primary`.
///
/// Stage one maps every coarse-grid target to the nearest node of the
/// complement of `primary`. Stage two picks, for every Lobatto node of degree
/// `p`, the nearest coarse-grid position and returns the complement node that
/// stands in for it.
pub fn secondary_mock_chebyshev_select(
    grid: &NodeSet,
    primary: &Selection,
    cfg: &Config,
) -> Result<Selection> {
    if primary.parent_size() != grid.len() {
        return Err(Error::LengthMismatch {
            expected: grid.len(),
            got: primary.parent_size(),
        });
    }
    let complement: Vec<usize> = (0..grid.len()).filter(|&i| !primary.contains(i)).collect();
    let complement_values: Vec<f64> = complement.iter().map(|&i| grid.values()[i]).collect();

    let coarse_targets = secondary_grid_targets(cfg.q);
    let coarse = nearest_injective(&complement_values, &coarse_targets, "secondary grid")?;
    let coarse_grid: Vec<usize> = coarse.into_iter().map(|c| complement[c]).collect();

    let lobatto = lobatto_targets(cfg.p);
    let picks = nearest_injective(&coarse_targets, &lobatto, "secondary mock-Chebyshev")?;
    let indices = picks.into_iter().map(|j| coarse_grid[j]).collect();
    Selection::new(grid.len(), indices)
}
