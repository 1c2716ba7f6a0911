//! Nonlinear least-squares curve fitting.

mod jacobian;
mod lm;
mod model;

pub use jacobian::numerical_jacobian;
pub use lm::{
    default_initial_params, levenberg_marquardt, Convergence, LmConfig, LmResult, LmStatus,
    SINGULAR_LAMBDA,
};
pub use model::{
    eval_exponential, AffineModel, ExponentialModel, ExponentialParams, FnModel,
    ParameterizedModel, EXPONENT_LIMIT,
};
