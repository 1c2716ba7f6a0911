use crate::error::{RegressError, Result};

/// A curve `f(params, x)` whose parameters are fitted by nonlinear least squares.
///
/// Implementations must be reentrant. `evaluate` returns `EvalDomain` instead
/// of a non-finite value.
pub trait ParameterizedModel {
    fn arity(&self) -> usize;

    fn evaluate(&self, params: &[f64], x: f64) -> Result<f64>;

    /// Closed-form `∂f/∂params` at `x`, when the model has one.
    fn analytic_jacobian(&self, _params: &[f64], _x: f64) -> Option<Result<Vec<f64>>> {
        None
    }
}

/// Largest admissible exponent `b·x` before `e^{b·x}` is considered overflow.
pub const EXPONENT_LIMIT: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl ExponentialParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if let Some(index) = [a, b, c].iter().position(|v| !v.is_finite()) {
            return Err(RegressError::NonFinite { index });
        }
        Ok(ExponentialParams { a, b, c })
    }

    pub fn from_slice(p: &[f64]) -> Result<Self> {
        match p {
            [a, b, c] => Self::new(*a, *b, *c),
            _ => Err(RegressError::Shape(format!(
                "exponential model takes 3 parameters, got {}",
                p.len()
            ))),
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

fn guarded_exp(b: f64, x: f64) -> Result<f64> {
    let exponent = b * x;
    if exponent > EXPONENT_LIMIT || !exponent.is_finite() {
        return Err(RegressError::EvalDomain(format!(
            "b·x = {exponent:e} exceeds {EXPONENT_LIMIT}"
        )));
    }
    Ok(exponent.exp())
}

/// `a·e^{b·x} + c`.
pub fn eval_exponential(p: ExponentialParams, x: f64) -> Result<f64> {
    let y = p.a * guarded_exp(p.b, x)? + p.c;
    if !y.is_finite() {
        return Err(RegressError::EvalDomain(format!("a·e^(b·x) + c = {y}")));
    }
    Ok(y)
}

/// Exponential growth model `a·e^{b·x} + c` with parameters `(a, b, c)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExponentialModel;

impl ParameterizedModel for ExponentialModel {
    fn arity(&self) -> usize {
        3
    }

    fn evaluate(&self, params: &[f64], x: f64) -> Result<f64> {
        eval_exponential(ExponentialParams::from_slice(params)?, x)
    }

    fn analytic_jacobian(&self, params: &[f64], x: f64) -> Option<Result<Vec<f64>>> {
        Some(ExponentialParams::from_slice(params).and_then(|p| {
            let e = guarded_exp(p.b, x)?;
            Ok(vec![e, p.a * x * e, 1.0])
        }))
    }
}

/// `p₀ + p₁·x`. Linear in its parameters, so LM on it must land on the OLS line.
#[derive(Debug, Clone, Copy, Default)]
pub struct AffineModel;

impl ParameterizedModel for AffineModel {
    fn arity(&self) -> usize {
        2
    }

    fn evaluate(&self, params: &[f64], x: f64) -> Result<f64> {
        Ok(params[0] + params[1] * x)
    }

    fn analytic_jacobian(&self, _params: &[f64], x: f64) -> Option<Result<Vec<f64>>> {
        Some(Ok(vec![1.0, x]))
    }
}

/// Wraps a closure as a model without an analytic Jacobian.
pub struct FnModel<F> {
    arity: usize,
    f: F,
}

impl<F> FnModel<F>
where
    F: Fn(&[f64], f64) -> Result<f64>,
{
    pub fn new(arity: usize, f: F) -> Self {
        FnModel { arity, f }
    }
}

impl<F> ParameterizedModel for FnModel<F>
where
    F: Fn(&[f64], f64) -> Result<f64>,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn evaluate(&self, params: &[f64], x: f64) -> Result<f64> {
        (self.f)(params, x)
    }
}
