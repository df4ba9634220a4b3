//! Constrained mock-Chebyshev least squares (CMCLS) approximation on
//! equispaced grids.
//!
//! Given samples of a function on `n + 1` equispaced nodes of `[-1, 1]`, the
//! CMCLS operator returns the polynomial of degree `r = m + p + 1` that
//! interpolates the data exactly on the mock-Chebyshev subset of the grid and
//! fits the remaining nodes in the least-squares sense. The constrained
//! problem is solved through its KKT system.
//!
//! The crate is organised bottom-up:
//!
//! * [`grid`] builds node sets and the mock-Chebyshev selections,
//! * [`cheb_basis`] evaluates Chebyshev series and differentiates them in
//!   coefficient space,
//! * [`dense_linalg`] provides the small dense LU toolkit used for the KKT
//!   system,
//! * [`operator`] assembles and solves the constrained problem,
//! * [`differentiation`] implements the two derivative strategies,
//! * [`interp`] holds the Lagrange machinery used by the error analysis,
//! * [`error_analysis`] evaluates the operator-norm bound and the closed-form
//!   error bounds,
//! * [`experiments`] reproduces the numerical experiments and writes CSV.

pub mod cheb_basis;
pub mod dense_linalg;
pub mod differentiation;
pub mod error;
pub mod error_analysis;
pub mod experiments;
pub mod grid;
pub mod interp;
pub mod operator;

pub use cheb_basis::ChebSeries;
pub use dense_linalg::DenseMatrix;
pub use differentiation::{DerivativeFit, Strategy};
pub use error::{Error, Result};
pub use error_analysis::{BoundReport, RegressionResult};
pub use grid::{Config, NodeKind, NodeSet, Selection};
pub use interp::LagrangeBasisSet;
pub use operator::{FitResult, Problem};
