//! Reference computations used only by tests and golden-file generation.
//!
//! Nothing here shares code with `regress-core`. Linear problems are solved
//! with exact rational arithmetic on the normal equations, and LOWESS is
//! recomputed point by point with a full neighbor sort and an exact 2×2 solve.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{FromPrimitive, ToPrimitive, Zero};

fn rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("oracle input must be finite")
}

/// Solves `(AᵀA) x = Aᵀb` exactly by Gauss-Jordan elimination over the rationals.
///
/// `rows` is the design matrix, one inner vector per observation. Returns
/// `None` when the normal matrix is singular.
pub fn normal_equations_exact(rows: &[Vec<f64>], b: &[f64]) -> Option<Vec<BigRational>> {
    assert_eq!(rows.len(), b.len());
    let cols = rows.first().map_or(0, Vec::len);
    let a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().copied().map(rational).collect())
        .collect();
    let b: Vec<BigRational> = b.iter().copied().map(rational).collect();

    // augmented [AᵀA | Aᵀb]
    let mut m = vec![vec![BigRational::zero(); cols + 1]; cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut s = BigRational::zero();
            for row in &a {
                s += &row[i] * &row[j];
            }
            m[i][j] = s;
        }
        let mut s = BigRational::zero();
        for (row, bk) in a.iter().zip(&b) {
            s += &row[i] * bk;
        }
        m[i][cols] = s;
    }

    for col in 0..cols {
        let pivot = (col..cols).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        for r in 0..cols {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[cols].clone()).collect())
}

/// [`normal_equations_exact`] rounded to the nearest doubles.
pub fn normal_equations_f64(rows: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    normal_equations_exact(rows, b).map(|xs| xs.iter().map(to_f64).collect())
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Design matrix `[1 | features]`.
pub fn with_intercept(features: &[Vec<f64>]) -> Vec<Vec<f64>> {
    features
        .iter()
        .map(|r| std::iter::once(1.0).chain(r.iter().copied()).collect())
        .collect()
}

/// Monomial design rows `(1, x, …, x^degree)` built with exact integer powers.
pub fn monomial_rows(x: &[f64], degree: usize) -> Vec<Vec<f64>> {
    x.iter()
        .map(|&xi| {
            let mut row = Vec::with_capacity(degree + 1);
            let mut acc = 1.0;
            for _ in 0..=degree {
                row.push(acc);
                acc *= xi;
            }
            row
        })
        .collect()
}

/// Closed-form simple regression `(β₀, β₁)` from centered sums, exact.
pub fn simple_closed_form(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = BigRational::from_usize(x.len()).unwrap();
    let xs: Vec<BigRational> = x.iter().copied().map(rational).collect();
    let ys: Vec<BigRational> = y.iter().copied().map(rational).collect();
    let xbar = xs.iter().fold(BigRational::zero(), |a, v| a + v) / &n;
    let ybar = ys.iter().fold(BigRational::zero(), |a, v| a + v) / &n;
    let mut sxy = BigRational::zero();
    let mut sxx = BigRational::zero();
    for (xi, yi) in xs.iter().zip(&ys) {
        sxy += (xi - &xbar) * (yi - &ybar);
        sxx += (xi - &xbar) * (xi - &xbar);
    }
    let slope = sxy / sxx;
    let intercept = ybar - &slope * xbar;
    (to_f64(&intercept), to_f64(&slope))
}

/// Analytic partials of `a·e^{b·x} + c` with respect to `(a, b, c)`.
pub fn exponential_partials(a: f64, b: f64, x: f64) -> [f64; 3] {
    let e = (b * x).exp();
    [e, a * x * e, 1.0]
}

fn tricube(u: f64) -> f64 {
    let u = u.abs();
    if u >= 1.0 {
        0.0
    } else {
        let t = 1.0 - u * u * u;
        t * t * t
    }
}

fn bisquare(u: f64) -> f64 {
    if u.abs() >= 1.0 {
        0.0
    } else {
        let t = 1.0 - u * u;
        t * t
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Brute-force LOWESS returning smoothed values in the caller's input order.
///
/// Window size is `max(3, ceil(frac·n))` clamped to `n`; neighbors are chosen
/// by sorting every sample by `(distance, sorted index)`.
pub fn lowess_brute_force(x: &[f64], y: &[f64], frac: f64, robust_iters: usize) -> Vec<f64> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).unwrap().then(a.cmp(&b)));
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();
    let k = ((frac * n as f64).ceil() as usize).max(3).min(n);

    let mut robustness = vec![1.0; n];
    let mut fitted = local_pass(&xs, &ys, &robustness, k);
    let y_max = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    for _ in 0..robust_iters {
        let residuals: Vec<f64> = ys.iter().zip(&fitted).map(|(a, b)| a - b).collect();
        let mut abs: Vec<f64> = residuals.iter().map(|r| r.abs()).collect();
        let s = median(&mut abs);
        // rounding-level residuals mean a perfect fit
        if s <= 1e-12 * y_max {
            break;
        }
        for (w, r) in robustness.iter_mut().zip(&residuals) {
            *w = bisquare(r / (6.0 * s));
        }
        fitted = local_pass(&xs, &ys, &robustness, k);
    }

    let mut out = vec![0.0; n];
    for (sorted_pos, &orig) in order.iter().enumerate() {
        out[orig] = fitted[sorted_pos];
    }
    out
}

fn local_pass(xs: &[f64], ys: &[f64], robustness: &[f64], k: usize) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let mut by_distance: Vec<usize> = (0..n).collect();
            by_distance.sort_by(|&a, &b| {
                let da = (xs[a] - xs[i]).abs();
                let db = (xs[b] - xs[i]).abs();
                da.partial_cmp(&db).unwrap().then(a.cmp(&b))
            });
            let window = &by_distance[..k];
            let d = window
                .iter()
                .map(|&j| (xs[j] - xs[i]).abs())
                .fold(0.0, f64::max);
            let plain_mean = || window.iter().map(|&j| ys[j]).sum::<f64>() / k as f64;
            if d == 0.0 {
                return plain_mean();
            }
            let weights: Vec<f64> = window
                .iter()
                .map(|&j| tricube((xs[j] - xs[i]).abs() / d) * robustness[j])
                .collect();

            let mut sw = BigRational::zero();
            let mut swx = BigRational::zero();
            let mut swxx = BigRational::zero();
            let mut swy = BigRational::zero();
            let mut swxy = BigRational::zero();
            for (&j, &w) in window.iter().zip(&weights) {
                let w = rational(w);
                let xj = rational(xs[j]);
                let yj = rational(ys[j]);
                sw += &w;
                swx += &w * &xj;
                swxx += &w * &xj * &xj;
                swy += &w * &yj;
                swxy += &w * &xj * &yj;
            }
            if sw.is_zero() {
                return plain_mean();
            }
            let det = &sw * &swxx - &swx * &swx;
            if det.is_zero() {
                return to_f64(&(swy / sw));
            }
            let slope = (&sw * &swxy - &swx * &swy) / &det;
            let intercept = (&swxx * &swy - &swx * &swxy) / &det;
            to_f64(&(intercept + slope * rational(xs[i])))
        })
        .collect()
}

/// Exact rational `p/q`, handy for spelling derived constants in tests.
pub fn ratio(p: i64, q: i64) -> f64 {
    to_f64(&BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Sign-aware relative difference with an absolute floor of 1.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
