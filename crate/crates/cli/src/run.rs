use std::fs;
use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;
use regress_core::nonlinear::{eval_exponential, ExponentialModel, ExponentialParams};
use regress_core::{
    diagnostics, fit_multiple, fit_polynomial, levenberg_marquardt, polynomial, smooth, FitReport,
    LinearFit, LmConfig, Matrix, PolynomialSpec, Vector,
};

use crate::dataset::{parse_csv, Dataset};
use crate::error::CliError;
use crate::format::emit_plot_data;
use crate::request::{CliRequest, FitModel, FitRequest, PredictRequest, SmoothRequest};
use crate::schema::{to_json, ExpParamsJson, FitDocument, ModelKind, SmoothDocument};

/// Runs a validated request. Results go to the requested files or stdout;
/// warnings go to stderr.
pub fn run(request: &CliRequest) -> Result<(), CliError> {
    match request {
        CliRequest::Fit(r) => run_fit(r),
        CliRequest::Predict(r) => run_predict(r),
        CliRequest::Smooth(r) => run_smooth(r),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let result = match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| CliError::Data(format!("writing output: {e}")))
}

fn write_plot(path: &Path, x: &[f64], y: &[f64], y_hat: &[f64]) -> Result<(), CliError> {
    emit_plot_data(x, y, y_hat, path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn load_csv(path: &Path) -> Result<Dataset, CliError> {
    parse_csv(&read(path)?).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn column<'a>(data: &'a Dataset, name: &str) -> Result<&'a [f64], CliError> {
    data.column(name).ok_or_else(|| {
        CliError::Data(format!(
            "no column named '{name}' (have: {})",
            data.column_names().join(", ")
        ))
    })
}

fn vector(values: &[f64]) -> Result<Vector, CliError> {
    Ok(Vector::from_slice(values)?)
}

fn feature_matrix(data: &Dataset, features: &[String]) -> Result<Matrix, CliError> {
    let cols = features
        .iter()
        .map(|f| column(data, f))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<Vec<f64>> = (0..data.n_rows())
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect();
    Ok(Matrix::new(data.n_rows(), features.len(), rows.concat())?)
}

fn warn_if_ill_conditioned(fit: &LinearFit) {
    if let Some(w) = fit.condition_warning() {
        eprintln!("warning: {w}");
    }
}

fn linear_document(
    model: ModelKind,
    req: &FitRequest,
    fit: &LinearFit,
    report: FitReport,
) -> FitDocument {
    let coefficients: IndexMap<String, f64> = fit
        .feature_names()
        .iter()
        .cloned()
        .zip(fit.coefficients().iter().copied())
        .collect();
    FitDocument {
        model,
        target: req.target.clone(),
        features: req.features.clone(),
        intercept: Some(fit.intercept()),
        coefficients: Some(coefficients),
        r2: report.r_squared,
        mse: report.mse,
        n_samples: fit.n_samples(),
        params: None,
        sse: None,
        iterations: None,
        status: None,
    }
}

fn run_fit(req: &FitRequest) -> Result<(), CliError> {
    let data = load_csv(&req.input_path)?;
    let y = vector(column(&data, &req.target)?)?;
    let x_first = column(&data, &req.features[0])?;

    let (doc, fitted) = match req.model {
        FitModel::Linear => {
            let x = feature_matrix(&data, &req.features)?;
            let fit = fit_multiple(&x, &y, &req.features)?;
            warn_if_ill_conditioned(&fit);
            let report = diagnostics(&fit, &y)?;
            let fitted = fitted_values(&y, &fit);
            (
                linear_document(ModelKind::Linear, req, &fit, report),
                fitted,
            )
        }
        FitModel::Poly(spec) => {
            let fit = fit_polynomial(&vector(x_first)?, &y, spec)?;
            warn_if_ill_conditioned(&fit);
            let report = diagnostics(&fit, &y)?;
            let fitted = fitted_values(&y, &fit);
            (linear_document(ModelKind::Poly, req, &fit, report), fitted)
        }
        FitModel::NlsExponential { p0 } => {
            let xs = vector(x_first)?;
            let lm = levenberg_marquardt(
                &ExponentialModel,
                &xs,
                &y,
                &vector(&p0)?,
                &LmConfig::default(),
            )?;
            if !lm.status.is_converged() {
                return Err(CliError::Numerical(format!(
                    "Levenberg-Marquardt stopped without converging: {} after {} iterations",
                    lm.status.as_str(),
                    lm.iterations
                )));
            }
            let p = ExponentialParams::from_slice(&lm.params)?;
            let fitted = xs
                .iter()
                .map(|&x| eval_exponential(p, x))
                .collect::<Result<Vec<_>, _>>()?;
            let report = FitReport::from_predictions(&y, &fitted)?;
            let doc = FitDocument {
                model: ModelKind::NlsExponential,
                target: req.target.clone(),
                features: req.features.clone(),
                intercept: None,
                coefficients: None,
                r2: report.r_squared,
                mse: report.mse,
                n_samples: y.len(),
                params: Some(ExpParamsJson {
                    a: p.a,
                    b: p.b,
                    c: p.c,
                }),
                sse: Some(lm.final_sse),
                iterations: Some(lm.iterations),
                status: Some(lm.status.as_str().to_string()),
            };
            (doc, fitted)
        }
    };

    write_output(req.output_path.as_deref(), &to_json(&doc))?;
    if let Some(plot) = &req.plot_path {
        write_plot(plot, x_first, &y, &fitted)?;
    }
    Ok(())
}

fn fitted_values(y: &Vector, fit: &LinearFit) -> Vec<f64> {
    y.iter()
        .zip(fit.residuals().iter())
        .map(|(y, r)| y - r)
        .collect()
}

fn load_fit(path: &Path) -> Result<FitDocument, CliError> {
    serde_json::from_slice(&read(path)?)
        .map_err(|e| CliError::Data(format!("{}: not a fit document: {e}", path.display())))
}

fn stored_linear(doc: &FitDocument) -> Result<LinearFit, CliError> {
    let (Some(intercept), Some(coefs)) = (doc.intercept, doc.coefficients.as_ref()) else {
        return Err(CliError::Data(format!(
            "{} fit is missing intercept or coefficients",
            doc.model.as_str()
        )));
    };
    Ok(LinearFit::from_coefficients(
        intercept,
        coefs.values().copied().collect(),
        coefs.keys().cloned().collect(),
    )?)
}

fn run_predict(req: &PredictRequest) -> Result<(), CliError> {
    let doc = load_fit(&req.fit_path)?;
    let mut data = load_csv(&req.input_path)?;
    let single_feature = || -> Result<Vector, CliError> {
        match doc.features.as_slice() {
            [f] => vector(column(&data, f)?),
            _ => Err(CliError::Data(format!(
                "{} fit must name exactly one feature",
                doc.model.as_str()
            ))),
        }
    };

    let y_pred: Vec<f64> = match doc.model {
        ModelKind::Linear => {
            let fit = stored_linear(&doc)?;
            if fit.feature_names() != doc.features.as_slice() {
                return Err(CliError::Data(
                    "coefficient names do not match the feature list".into(),
                ));
            }
            regress_core::predict(&fit, &feature_matrix(&data, &doc.features)?)?.into_vec()
        }
        ModelKind::Poly => {
            let fit = stored_linear(&doc)?;
            let spec = PolynomialSpec::new(fit.coefficients().len())?;
            if fit.feature_names() != spec.feature_names().as_slice() {
                return Err(CliError::Data(
                    "poly coefficients must be named x^1..x^d in order".into(),
                ));
            }
            polynomial::predict(&fit, &single_feature()?)?.into_vec()
        }
        ModelKind::NlsExponential => {
            let Some(p) = doc.params else {
                return Err(CliError::Data("nls fit is missing params".into()));
            };
            let p = ExponentialParams::new(p.a, p.b, p.c)?;
            single_feature()?
                .iter()
                .map(|&x| eval_exponential(p, x))
                .collect::<Result<_, _>>()?
        }
    };
    data.push_column("y_pred", y_pred)?;
    write_output(req.output_path.as_deref(), &data.to_csv())
}

fn run_smooth(req: &SmoothRequest) -> Result<(), CliError> {
    let data = load_csv(&req.input_path)?;
    let x = column(&data, &req.x)?;
    let y = column(&data, &req.y)?;
    let result = smooth(&vector(x)?, &vector(y)?, req.config)?;
    let doc = SmoothDocument {
        model: "lowess".into(),
        frac: req.config.frac(),
        robust_iters: req.config.robust_iters(),
        n_samples: data.n_rows(),
    };
    write_output(req.output_path.as_deref(), &to_json(&doc))?;
    if let Some(plot) = &req.plot_path {
        write_plot(plot, x, y, &result.original_order_smoothed)?;
    }
    Ok(())
}
