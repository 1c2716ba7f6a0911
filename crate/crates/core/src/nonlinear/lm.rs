//! Levenberg-Marquardt for `min Σ (yᵢ − f(p, xᵢ))²`.
//!
//! Each trial step solves the damped system `(JᵀJ + λI) Δ = Jᵀr` as the
//! stacked least-squares problem `[J; √λ·I] Δ ≈ [r; 0]` through the crate's
//! QR solver. Accepted steps divide λ by ν, rejected steps multiply it.

use super::jacobian::model_jacobian;
use super::model::ParameterizedModel;
use crate::error::{RegressError, Result};
use crate::matrix::{Matrix, Vector};
use crate::qr::{least_squares_slice, norm2};

/// Damping at or above which a still-singular step system is reported as
/// [`LmStatus::SingularStep`].
pub const SINGULAR_LAMBDA: f64 = 1e8;
const LAMBDA_CEILING: f64 = 1e200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmConfig {
    pub lambda0: f64,
    pub nu: f64,
    pub max_iter: usize,
    /// Stop when an accepted step lowers the SSE by less than this fraction.
    pub tol_cost: f64,
    /// Stop when `‖Jᵀr‖∞` falls below this.
    pub tol_grad: f64,
    /// Stop when `‖Δp‖₂` falls below this.
    pub tol_step: f64,
    /// Base step of the central-difference Jacobian.
    pub jacobian_step: f64,
}

impl Default for LmConfig {
    fn default() -> Self {
        LmConfig {
            lambda0: 1e-3,
            nu: 10.0,
            max_iter: 200,
            tol_cost: 1e-10,
            tol_grad: 1e-10,
            tol_step: 1e-12,
            jacobian_step: 1e-6,
        }
    }
}

impl LmConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(RegressError::InvalidConfig(format!(
                    "{name} must be positive and finite, got {v}"
                )))
            }
        };
        positive("lambda0", self.lambda0)?;
        positive("tol_cost", self.tol_cost)?;
        positive("tol_grad", self.tol_grad)?;
        positive("tol_step", self.tol_step)?;
        positive("jacobian_step", self.jacobian_step)?;
        if !(self.nu > 1.0 && self.nu.is_finite()) {
            return Err(RegressError::InvalidConfig(format!(
                "nu must exceed 1, got {}",
                self.nu
            )));
        }
        Ok(())
    }
}

/// Which stopping rule fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// Relative SSE decrease of an accepted step fell below `tol_cost`.
    Cost,
    /// `‖Jᵀr‖∞ < tol_grad`.
    Gradient,
    /// `‖Δp‖₂ < tol_step`.
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LmStatus {
    Converged(Convergence),
    MaxIterReached,
    SingularStep,
}

impl LmStatus {
    pub fn is_converged(&self) -> bool {
        matches!(self, LmStatus::Converged(_))
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LmStatus::Converged(_) => "converged",
            LmStatus::MaxIterReached => "max_iter_reached",
            LmStatus::SingularStep => "singular_step",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmResult {
    pub params: Vector,
    pub final_sse: f64,
    /// Trial steps taken, accepted or rejected.
    pub iterations: usize,
    pub status: LmStatus,
    /// SSE at the start and after every accepted step.
    pub cost_trace: Vec<f64>,
}

/// All-ones starting point, used when the caller has no better guess.
pub fn default_initial_params(arity: usize) -> Vector {
    Vector::from_vec_unchecked(vec![1.0; arity])
}

fn residuals<M: ParameterizedModel + ?Sized>(
    model: &M,
    params: &[f64],
    xs: &[f64],
    ys: &[f64],
) -> Result<(Vec<f64>, f64)> {
    let mut r = Vec::with_capacity(xs.len());
    for (&x, &y) in xs.iter().zip(ys) {
        let f = model.evaluate(params, x)?;
        if !f.is_finite() {
            return Err(RegressError::EvalDomain(format!(
                "model returned {f} at x = {x}"
            )));
        }
        r.push(y - f);
    }
    let sse = r.iter().map(|v| v * v).sum();
    Ok((r, sse))
}

/// Solves `[J; √λ·I] Δ ≈ [r; 0]`.
fn damped_step(jac: &Matrix, r: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let (m, n) = (jac.rows(), jac.cols());
    let sqrt_lambda = lambda.sqrt();
    let mut data = Vec::with_capacity((m + n) * n);
    data.extend_from_slice(jac.as_slice());
    for i in 0..n {
        data.extend((0..n).map(|j| if i == j { sqrt_lambda } else { 0.0 }));
    }
    let stacked = Matrix::from_vec_unchecked(m + n, n, data);
    let mut rhs = r.to_vec();
    rhs.resize(m + n, 0.0);
    Ok(least_squares_slice(&stacked, &rhs)?.coefficients.into_vec())
}

pub fn levenberg_marquardt<M: ParameterizedModel + ?Sized>(
    model: &M,
    xs: &Vector,
    ys: &Vector,
    p0: &Vector,
    cfg: &LmConfig,
) -> Result<LmResult> {
    cfg.validate()?;
    if xs.len() != ys.len() {
        return Err(RegressError::Shape(format!(
            "{} x values, {} y values",
            xs.len(),
            ys.len()
        )));
    }
    let arity = model.arity();
    if p0.len() != arity {
        return Err(RegressError::Shape(format!(
            "model takes {arity} parameters, p0 has {}",
            p0.len()
        )));
    }
    if xs.len() < arity {
        return Err(RegressError::UnderDetermined {
            samples: xs.len(),
            required: arity,
        });
    }

    let mut params = p0.to_vec();
    let (mut r, mut sse) = residuals(model, &params, xs, ys)?;
    let mut cost_trace = vec![sse];
    let mut lambda = cfg.lambda0;
    let mut iterations = 0;
    let mut jacobian: Option<Matrix> = None;

    let status = loop {
        if iterations >= cfg.max_iter {
            break LmStatus::MaxIterReached;
        }
        if sse == 0.0 {
            break LmStatus::Converged(Convergence::Gradient);
        }
        let jac = match &jacobian {
            Some(j) => j,
            None => {
                let j = model_jacobian(model, &params, xs, cfg.jacobian_step)?;
                let grad = j.tr_mul_vec(&r)?;
                if grad.iter().all(|g| g.abs() < cfg.tol_grad) {
                    break LmStatus::Converged(Convergence::Gradient);
                }
                jacobian.insert(j)
            }
        };

        iterations += 1;
        let step = match damped_step(jac, &r, lambda) {
            Ok(step) => step,
            Err(RegressError::RankDeficient { .. }) if lambda < SINGULAR_LAMBDA => {
                lambda = (lambda * cfg.nu).min(LAMBDA_CEILING);
                continue;
            }
            Err(RegressError::RankDeficient { .. }) => break LmStatus::SingularStep,
            Err(e) => return Err(e),
        };
        if norm2(&step) < cfg.tol_step {
            break LmStatus::Converged(Convergence::Step);
        }

        let trial: Vec<f64> = params.iter().zip(&step).map(|(p, d)| p + d).collect();
        let accepted = match residuals(model, &trial, xs, ys) {
            Ok((tr, tsse)) if tsse.is_finite() && tsse <= sse => Some((tr, tsse)),
            // leaving the model's domain counts as a rejected step
            Ok(_) | Err(RegressError::EvalDomain(_)) => None,
            Err(e) => return Err(e),
        };
        match accepted {
            Some((tr, tsse)) => {
                let decrease = (sse - tsse) / sse;
                params = trial;
                r = tr;
                sse = tsse;
                cost_trace.push(sse);
                jacobian = None;
                lambda = (lambda / cfg.nu).max(f64::MIN_POSITIVE);
                if decrease < cfg.tol_cost {
                    break LmStatus::Converged(Convergence::Cost);
                }
            }
            None => lambda = (lambda * cfg.nu).min(LAMBDA_CEILING),
        }
    };

    Ok(LmResult {
        params: Vector::new(params)?,
        final_sse: sse,
        iterations,
        status,
        cost_trace,
    })
}
