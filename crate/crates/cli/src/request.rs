//! Command-line grammar and the validated request it produces.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use regress_core::lowess::{DEFAULT_FRAC, DEFAULT_ROBUST_ITERS};
use regress_core::{LowessConfig, PolynomialSpec};

use crate::error::CliError;
use crate::schema::ModelKind;

#[derive(Debug, Parser)]
#[command(
    name = "regress",
    version,
    about = "Fit regression models to numeric CSV data",
    after_help = "CSV input: header row, comma separated, numeric cells only, no quoting.\n\
                  Exit codes: 0 ok, 1 usage, 2 data, 3 numerical failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a model and write its JSON summary.
    Fit(FitArgs),
    /// Apply a saved fit to a feature CSV, appending a y_pred column.
    Predict(PredictArgs),
    /// LOWESS-smooth one column against another.
    #[command(long_about = "LOWESS-smooth one column against another.\n\n\
        Each local fit uses the k = max(3, ceil(frac * n)) nearest samples, \
        clamped to n. The floor of 3 keeps every local line solvable; \
        implementations using floor(frac * n) can differ on small inputs.")]
    Smooth(SmoothArgs),
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub target: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub features: Vec<String>,
    /// Polynomial degree; required for --model poly.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Starting point a,b,c for --model nls-exponential (default 1,1,1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p0: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write x / y_actual / y_predicted TSV; x is the first feature.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub fit: PathBuf,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SmoothArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
    /// Fraction of samples in each local window, in (0, 1]; default 2/3.
    #[arg(long, allow_hyphen_values = true)]
    pub frac: Option<f64>,
    /// Robustifying passes; default 3.
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitModel {
    Linear,
    Poly(PolynomialSpec),
    NlsExponential { p0: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitRequest {
    pub model: FitModel,
    pub input_path: PathBuf,
    pub target: String,
    pub features: Vec<String>,
    pub output_path: Option<PathBuf>,
    pub plot_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictRequest {
    pub fit_path: PathBuf,
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothRequest {
    pub input_path: PathBuf,
    pub x: String,
    pub y: String,
    pub config: LowessConfig,
    pub output_path: Option<PathBuf>,
    pub plot_path: Option<PathBuf>,
}

/// A request whose flag combinations have been checked.
#[derive(Debug, Clone, PartialEq)]
pub enum CliRequest {
    Fit(FitRequest),
    Predict(PredictRequest),
    Smooth(SmoothRequest),
}

impl TryFrom<Command> for CliRequest {
    type Error = CliError;

    fn try_from(cmd: Command) -> Result<Self, CliError> {
        match cmd {
            Command::Fit(a) => fit_request(a).map(CliRequest::Fit),
            Command::Predict(a) => Ok(CliRequest::Predict(PredictRequest {
                fit_path: a.fit,
                input_path: a.input,
                output_path: a.out,
            })),
            Command::Smooth(a) => Ok(CliRequest::Smooth(SmoothRequest {
                input_path: a.input,
                x: a.x,
                y: a.y,
                config: LowessConfig::new(
                    a.frac.unwrap_or(DEFAULT_FRAC),
                    a.iters.unwrap_or(DEFAULT_ROBUST_ITERS),
                )?,
                output_path: a.out,
                plot_path: a.plot,
            })),
        }
    }
}

fn fit_request(a: FitArgs) -> Result<FitRequest, CliError> {
    let usage = |m: &str| Err(CliError::Usage(m.to_string()));
    if a.features.iter().any(|f| f.trim().is_empty()) {
        return usage("--features contains an empty column name");
    }
    if a.degree.is_some() && a.model != ModelKind::Poly {
        return usage("--degree only applies to --model poly");
    }
    if a.p0.is_some() && a.model != ModelKind::NlsExponential {
        return usage("--p0 only applies to --model nls-exponential");
    }
    let model = match a.model {
        ModelKind::Linear => FitModel::Linear,
        ModelKind::Poly => {
            let Some(degree) = a.degree else {
                return usage("--model poly requires --degree");
            };
            if a.features.len() != 1 {
                return usage("--model poly takes exactly one feature");
            }
            FitModel::Poly(PolynomialSpec::new(degree)?)
        }
        ModelKind::NlsExponential => {
            if a.features.len() != 1 {
                return usage("--model nls-exponential takes exactly one feature");
            }
            let p0 = match a.p0.as_deref() {
                None => [1.0; 3],
                Some(&[pa, pb, pc]) if [pa, pb, pc].iter().all(|v| v.is_finite()) => [pa, pb, pc],
                Some(_) => return usage("--p0 takes three finite values a,b,c"),
            };
            FitModel::NlsExponential { p0 }
        }
    };
    Ok(FitRequest {
        model,
        input_path: a.input,
        target: a.target,
        features: a.features,
        output_path: a.out,
        plot_path: a.plot,
    })
}
