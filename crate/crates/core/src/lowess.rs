//! LOWESS: locally weighted degree-1 regression with optional bisquare
//! robustness iterations.
//!
//! For every sample the `k = max(3, ⌈frac·n⌉)` nearest neighbors (clamped to
//! `n`) form a window. Neighbors get tricube weights on `|xⱼ − xᵢ| / dᵢ`, where
//! `dᵢ` is the distance to the farthest of them, and a weighted line is fitted
//! and evaluated at `xᵢ`. Each robustness pass multiplies those weights by
//! `bisquare(rⱼ / (6·median|r|))` of the previous pass's residuals.

use crate::error::{RegressError, Result};
use crate::matrix::{Matrix, Vector};
use crate::qr::least_squares_slice;

pub const DEFAULT_ROBUST_ITERS: usize = 3;
pub const DEFAULT_FRAC: f64 = 2.0 / 3.0;
/// Smallest window that leaves a solvable local line after the farthest
/// neighbor's weight drops to zero.
pub const MIN_WINDOW: usize = 3;
/// Robustness passes stop once `median|r| ≤ PERFECT_FIT_TOL · max|y|`.
pub const PERFECT_FIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowessConfig {
    frac: f64,
    robust_iters: usize,
}

impl LowessConfig {
    pub fn new(frac: f64, robust_iters: usize) -> Result<Self> {
        if !(frac > 0.0 && frac <= 1.0) {
            return Err(RegressError::InvalidFrac(frac));
        }
        Ok(LowessConfig { frac, robust_iters })
    }

    pub fn frac(&self) -> f64 {
        self.frac
    }

    pub fn robust_iters(&self) -> usize {
        self.robust_iters
    }

    /// Neighbors per local fit for `n` samples.
    pub fn window_size(&self, n: usize) -> usize {
        ((self.frac * n as f64).ceil() as usize)
            .max(MIN_WINDOW)
            .min(n)
    }
}

impl Default for LowessConfig {
    fn default() -> Self {
        LowessConfig {
            frac: DEFAULT_FRAC,
            robust_iters: DEFAULT_ROBUST_ITERS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LowessResult {
    pub x_sorted: Vector,
    /// Smoothed values aligned with `x_sorted`.
    pub y_smoothed: Vector,
    /// Smoothed values in the caller's input order.
    pub original_order_smoothed: Vector,
    pub config: LowessConfig,
}

/// `(1 − |u|³)³` on `|u| < 1`, else 0.
pub fn tricube(u: f64) -> f64 {
    let u = u.abs();
    if u < 1.0 {
        let t = 1.0 - u * u * u;
        t * t * t
    } else {
        0.0
    }
}

/// `(1 − u²)²` on `|u| < 1`, else 0.
pub fn bisquare(u: f64) -> f64 {
    if u.abs() < 1.0 {
        let t = 1.0 - u * u;
        t * t
    } else {
        0.0
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Start index of each sample's `k`-nearest window in sorted `xs`.
/// Equal distances keep the window on the left.
fn window_starts(xs: &[f64], k: usize) -> Vec<usize> {
    let n = xs.len();
    let mut lo = 0;
    (0..n)
        .map(|i| {
            while lo + k < n && xs[i] - xs[lo] > xs[lo + k] - xs[i] {
                lo += 1;
            }
            lo
        })
        .collect()
}

fn local_estimate(
    xs: &[f64],
    ys: &[f64],
    robustness: &[f64],
    i: usize,
    lo: usize,
    k: usize,
) -> f64 {
    let window = lo..lo + k;
    let plain_mean = || ys[window.clone()].iter().sum::<f64>() / k as f64;
    let xi = xs[i];
    let d = (xi - xs[lo]).max(xs[lo + k - 1] - xi);
    if d == 0.0 {
        return plain_mean();
    }

    let weights: Vec<f64> = window
        .clone()
        .map(|j| tricube((xs[j] - xi) / d) * robustness[j])
        .collect();
    let total: f64 = weights.iter().sum();
    if total == 0.0 {
        return plain_mean();
    }

    // weighted line in coordinates centered on xᵢ; its intercept is the estimate
    let mut design = Vec::with_capacity(2 * k);
    let mut rhs = Vec::with_capacity(k);
    for (j, w) in window.clone().zip(&weights) {
        let sw = w.sqrt();
        design.push(sw);
        design.push(sw * (xs[j] - xi));
        rhs.push(sw * ys[j]);
    }
    let design = Matrix::from_vec_unchecked(k, 2, design);
    match least_squares_slice(&design, &rhs) {
        Ok(solution) => solution.coefficients[0],
        Err(_) => window.zip(&weights).map(|(j, w)| w * ys[j]).sum::<f64>() / total,
    }
}

fn local_pass(xs: &[f64], ys: &[f64], robustness: &[f64], starts: &[usize], k: usize) -> Vec<f64> {
    starts
        .iter()
        .enumerate()
        .map(|(i, &lo)| local_estimate(xs, ys, robustness, i, lo, k))
        .collect()
}

pub fn smooth(x: &Vector, y: &Vector, cfg: LowessConfig) -> Result<LowessResult> {
    if x.len() != y.len() {
        return Err(RegressError::Shape(format!(
            "x has {} samples, y has {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Err(RegressError::UnderDetermined {
            samples: n,
            required: 2,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep input order
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();

    let k = cfg.window_size(n);
    let starts = window_starts(&xs, k);
    let mut robustness = vec![1.0; n];
    let mut fitted = local_pass(&xs, &ys, &robustness, &starts, k);
    let y_max = y.max_abs();

    for _ in 0..cfg.robust_iters {
        let residuals: Vec<f64> = ys.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        let mut abs: Vec<f64> = residuals.iter().map(|r| r.abs()).collect();
        let scale = median(&mut abs);
        if scale <= PERFECT_FIT_TOL * y_max {
            break;
        }
        for (w, r) in robustness.iter_mut().zip(&residuals) {
            *w = bisquare(r / (6.0 * scale));
        }
        fitted = local_pass(&xs, &ys, &robustness, &starts, k);
    }

    let mut original = vec![0.0; n];
    for (pos, &idx) in order.iter().enumerate() {
        original[idx] = fitted[pos];
    }
    Ok(LowessResult {
        x_sorted: Vector::new(xs)?,
        y_smoothed: Vector::new(fitted)?,
        original_order_smoothed: Vector::new(original)?,
        config: cfg,
    })
}
