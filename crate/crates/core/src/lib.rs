//! Regression toolkit: ordinary least squares, polynomial fits, nonlinear
//! least squares via Levenberg-Marquardt, and LOWESS smoothing.
//!
//! All linear solves go through the Householder QR in [`qr`].

pub mod error;
pub mod linear;
pub mod lowess;
pub mod matrix;
pub mod nonlinear;
pub mod polynomial;
pub mod qr;

pub use error::{RegressError, Result};
pub use linear::{diagnostics, fit_multiple, fit_simple, predict, FitReport, LinearFit};
pub use lowess::{smooth, LowessConfig, LowessResult};
pub use matrix::{Matrix, Vector};
pub use nonlinear::{levenberg_marquardt, numerical_jacobian, LmConfig, LmResult, LmStatus};
pub use polynomial::{expand, fit_polynomial, PolynomialSpec};
pub use qr::{estimate_rank, least_squares, qr_decompose, solve_least_squares, QrFactors};
