//! Ordinary least squares with an intercept: simple and multiple regression.

use crate::error::{RegressError, Result};
use crate::matrix::{Matrix, Vector};
use crate::qr::least_squares;

/// Pivot ratio of `R` above which a fit carries a [`ConditionWarning`].
///
/// Ratios beyond `1 / DEFAULT_RANK_TOL` are already rejected as rank
/// deficient, so the warning band sits below that.
pub const CONDITION_WARNING_THRESHOLD: f64 = 1e8;

/// Fitted linear model `ŷ = β₀ + Σ βⱼ xⱼ` and its training residuals.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    intercept: f64,
    coefficients: Vec<f64>,
    feature_names: Vec<String>,
    residuals: Vector,
    pivot_ratio: f64,
}

/// The design's `max|r_ii| / min|r_ii|` exceeded [`CONDITION_WARNING_THRESHOLD`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionWarning {
    pub pivot_ratio: f64,
}

impl std::fmt::Display for ConditionWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ill-conditioned design: pivot ratio {:e} exceeds {:e}",
            self.pivot_ratio, CONDITION_WARNING_THRESHOLD
        )
    }
}

impl LinearFit {
    /// Rebuilds a fit from stored coefficients, e.g. one loaded from disk.
    /// The result has no training residuals.
    pub fn from_coefficients(
        intercept: f64,
        coefficients: Vec<f64>,
        feature_names: Vec<String>,
    ) -> Result<Self> {
        if coefficients.len() != feature_names.len() {
            return Err(RegressError::Shape(format!(
                "{} coefficients for {} feature names",
                coefficients.len(),
                feature_names.len()
            )));
        }
        Vector::from_slice(&coefficients)?;
        Vector::from_slice(&[intercept])?;
        Ok(LinearFit {
            intercept,
            coefficients,
            feature_names,
            residuals: Vector::default(),
            pivot_ratio: 1.0,
        })
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn residuals(&self) -> &Vector {
        &self.residuals
    }

    pub fn n_samples(&self) -> usize {
        self.residuals.len()
    }

    pub fn pivot_ratio(&self) -> f64 {
        self.pivot_ratio
    }

    pub fn condition_warning(&self) -> Option<ConditionWarning> {
        (self.pivot_ratio > CONDITION_WARNING_THRESHOLD).then_some(ConditionWarning {
            pivot_ratio: self.pivot_ratio,
        })
    }

    /// `β₀ + Σ βⱼ row[j]`.
    pub fn predict_row(&self, row: &[f64]) -> f64 {
        self.intercept
            + self
                .coefficients
                .iter()
                .zip(row)
                .map(|(b, x)| b * x)
                .sum::<f64>()
    }
}

/// Fits against a design whose first column is the constant term.
///
/// Shared by [`fit_multiple`] and polynomial fitting so both run the exact
/// same solve.
pub(crate) fn fit_design(design: &Matrix, y: &Vector, names: Vec<String>) -> Result<LinearFit> {
    debug_assert_eq!(design.cols(), names.len() + 1);
    if design.rows() != y.len() {
        return Err(RegressError::Shape(format!(
            "{} feature rows for {} targets",
            design.rows(),
            y.len()
        )));
    }
    if design.rows() < design.cols() {
        return Err(RegressError::UnderDetermined {
            samples: design.rows(),
            required: design.cols(),
        });
    }
    let solution = least_squares(design, y)?;
    let beta = solution.coefficients.as_slice();
    let fitted = design.mul_vec(beta)?;
    let residuals = y.iter().zip(&fitted).map(|(a, b)| a - b).collect();
    Ok(LinearFit {
        intercept: beta[0],
        coefficients: beta[1..].to_vec(),
        feature_names: names,
        residuals: Vector::new(residuals)?,
        pivot_ratio: solution.pivot_ratio(),
    })
}

/// `y = β₀ + β₁x`.
pub fn fit_simple(x: &Vector, y: &Vector) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(RegressError::Shape(format!(
            "x has {} samples, y has {}",
            x.len(),
            y.len()
        )));
    }
    fit_multiple(&Matrix::column(x), y, &["x".to_string()])
}

/// `y = β₀ + β₁x₁ + … + βₙxₙ`, one feature per column of `x`.
pub fn fit_multiple(x: &Matrix, y: &Vector, names: &[String]) -> Result<LinearFit> {
    if names.len() != x.cols() {
        return Err(RegressError::Shape(format!(
            "{} names for {} feature columns",
            names.len(),
            x.cols()
        )));
    }
    let ones = Matrix::new(x.rows(), 1, vec![1.0; x.rows()])?;
    fit_design(&ones.hstack(x)?, y, names.to_vec())
}

pub fn predict(fit: &LinearFit, x: &Matrix) -> Result<Vector> {
    if x.cols() != fit.coefficients.len() {
        return Err(RegressError::Shape(format!(
            "{} feature columns, fit has {} coefficients",
            x.cols(),
            fit.coefficients.len()
        )));
    }
    Vector::new((0..x.rows()).map(|i| fit.predict_row(x.row(i))).collect())
}

/// Goodness-of-fit summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitReport {
    pub r_squared: f64,
    pub mse: f64,
    pub residual_max_abs: f64,
}

impl FitReport {
    /// Report for arbitrary predictions. `r_squared` may be negative here.
    pub fn from_predictions(y: &[f64], predicted: &[f64]) -> Result<Self> {
        if y.len() != predicted.len() {
            return Err(RegressError::Shape(format!(
                "{} targets, {} predictions",
                y.len(),
                predicted.len()
            )));
        }
        let residuals: Vec<f64> = y.iter().zip(predicted).map(|(a, b)| a - b).collect();
        report(y, &residuals)
    }
}

fn report(y: &[f64], residuals: &[f64]) -> Result<FitReport> {
    let n = y.len();
    if n == 0 {
        return Err(RegressError::UnderDetermined {
            samples: 0,
            required: 1,
        });
    }
    let mean = y.iter().sum::<f64>() / n as f64;
    let ss_tot: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let residual_max_abs = residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()));

    let r_squared = if ss_tot == 0.0 {
        // residuals within rounding of the target magnitude count as a perfect fit
        let y_max = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if residual_max_abs <= 16.0 * f64::EPSILON * y_max {
            1.0
        } else {
            return Err(RegressError::DegenerateTarget);
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(FitReport {
        r_squared,
        mse: ss_res / n as f64,
        residual_max_abs,
    })
}

/// r² and MSE of a fit against its training targets `y`.
pub fn diagnostics(fit: &LinearFit, y: &Vector) -> Result<FitReport> {
    if y.len() != fit.n_samples() {
        return Err(RegressError::Shape(format!(
            "{} targets for a fit on {} samples",
            y.len(),
            fit.n_samples()
        )));
    }
    report(y, &fit.residuals)
}
