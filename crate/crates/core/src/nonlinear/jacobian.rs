use super::model::ParameterizedModel;
use crate::error::{RegressError, Result};
use crate::matrix::{Matrix, Vector};

/// Central-difference Jacobian of `model` at `params`, one row per sample.
///
/// Column `j` uses the step `hⱼ = step · max(1, |pⱼ|)`.
pub fn numerical_jacobian<M: ParameterizedModel + ?Sized>(
    model: &M,
    params: &Vector,
    xs: &Vector,
    step: f64,
) -> Result<Matrix> {
    if params.len() != model.arity() {
        return Err(RegressError::Shape(format!(
            "model takes {} parameters, got {}",
            model.arity(),
            params.len()
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(RegressError::InvalidConfig(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    central_differences(model, params, xs, step)
}

fn central_differences<M: ParameterizedModel + ?Sized>(
    model: &M,
    params: &[f64],
    xs: &[f64],
    step: f64,
) -> Result<Matrix> {
    let n = params.len();
    let mut data = vec![0.0; xs.len() * n];
    let mut probe = params.to_vec();
    for j in 0..n {
        let h = step * params[j].abs().max(1.0);
        for (i, &x) in xs.iter().enumerate() {
            probe[j] = params[j] + h;
            let up = model.evaluate(&probe, x)?;
            probe[j] = params[j] - h;
            let down = model.evaluate(&probe, x)?;
            data[i * n + j] = (up - down) / (2.0 * h);
        }
        probe[j] = params[j];
    }
    Matrix::new(xs.len(), n, data).map_err(|_| {
        RegressError::EvalDomain("non-finite finite-difference derivative".to_string())
    })
}

/// Analytic Jacobian when the model provides one, central differences otherwise.
pub(crate) fn model_jacobian<M: ParameterizedModel + ?Sized>(
    model: &M,
    params: &[f64],
    xs: &[f64],
    step: f64,
) -> Result<Matrix> {
    let n = params.len();
    let mut data = Vec::with_capacity(xs.len() * n);
    for &x in xs {
        match model.analytic_jacobian(params, x) {
            Some(row) => {
                let row = row?;
                if row.len() != n {
                    return Err(RegressError::Shape(format!(
                        "analytic Jacobian row has {} entries for {n} parameters",
                        row.len()
                    )));
                }
                data.extend(row);
            }
            None => return central_differences(model, params, xs, step),
        }
    }
    Matrix::new(xs.len(), n, data)
        .map_err(|_| RegressError::EvalDomain("non-finite analytic derivative".to_string()))
}
