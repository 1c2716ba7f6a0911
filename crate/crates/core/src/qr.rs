//! Householder QR factorization and the least-squares solver built on it.
//!
//! Every linear fit in the crate goes through [`solve_least_squares`] (or
//! [`least_squares`] when the caller also wants the pivots of `R`). Reflections
//! are sign-normalized so the diagonal of `R` is non-negative.

use crate::error::{RegressError, Result};
use crate::matrix::{Matrix, Vector};

/// Pivots `|r_ii|` at or below this fraction of the largest pivot count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-12;

/// Thin factorization `A = Q·R` of an `m×n` matrix with `m ≥ n`.
#[derive(Debug, Clone)]
pub struct QrFactors {
    q: Matrix,
    r: Matrix,
}

impl QrFactors {
    /// `m×n`, orthonormal columns.
    pub fn q(&self) -> &Matrix {
        &self.q
    }

    /// `n×n`, upper triangular with a non-negative diagonal.
    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn into_parts(self) -> (Matrix, Matrix) {
        (self.q, self.r)
    }
}

/// Least-squares coefficients together with the diagonal of `R`.
#[derive(Debug, Clone)]
pub struct LeastSquaresSolution {
    pub coefficients: Vector,
    pub r_diagonal: Vec<f64>,
}

impl LeastSquaresSolution {
    /// `max|r_ii| / min|r_ii|`, a cheap conditioning estimate of the design.
    pub fn pivot_ratio(&self) -> f64 {
        pivot_ratio(&self.r_diagonal)
    }
}

pub(crate) fn pivot_ratio(diag: &[f64]) -> f64 {
    let max = diag.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let min = diag.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if diag.is_empty() {
        1.0
    } else {
        max / min
    }
}

/// Euclidean norm with scaling against overflow.
pub(crate) fn norm2(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = values.iter().map(|v| (v / scale) * (v / scale)).sum();
    scale * sum.sqrt()
}

/// Householder factorization kept in compact form: unit reflectors plus the
/// sign flips that make `R`'s diagonal non-negative.
struct Householder {
    m: usize,
    n: usize,
    /// Working copy of `A`; upper triangle holds the unflipped `R`.
    work: Vec<f64>,
    /// Unit reflector for column k, acting on rows k..m. `None` when the
    /// sub-column was already zero.
    reflectors: Vec<Option<Vec<f64>>>,
    signs: Vec<f64>,
}

impl Householder {
    fn factor(m: usize, n: usize, a: &[f64]) -> Householder {
        debug_assert!(m >= n && a.len() == m * n);
        let mut work = a.to_vec();
        let mut reflectors = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);

        for k in 0..n {
            let x: Vec<f64> = (k..m).map(|i| work[i * n + k]).collect();
            let norm = norm2(&x);
            if norm == 0.0 {
                reflectors.push(None);
                signs.push(1.0);
                continue;
            }
            let alpha = if x[0] >= 0.0 { -norm } else { norm };
            let mut v = x;
            v[0] -= alpha;
            let vnorm = norm2(&v);
            v.iter_mut().for_each(|vi| *vi /= vnorm);

            for j in k + 1..n {
                let dot: f64 = v
                    .iter()
                    .enumerate()
                    .map(|(t, vi)| vi * work[(k + t) * n + j])
                    .sum();
                for (t, vi) in v.iter().enumerate() {
                    work[(k + t) * n + j] -= 2.0 * dot * vi;
                }
            }
            work[k * n + k] = alpha;
            for i in k + 1..m {
                work[i * n + k] = 0.0;
            }
            signs.push(if alpha < 0.0 { -1.0 } else { 1.0 });
            reflectors.push(Some(v));
        }
        Householder {
            m,
            n,
            work,
            reflectors,
            signs,
        }
    }

    fn reflect(v: &[f64], offset: usize, target: &mut [f64], stride: usize, col: usize) {
        let dot: f64 = v
            .iter()
            .enumerate()
            .map(|(t, vi)| vi * target[(offset + t) * stride + col])
            .sum();
        for (t, vi) in v.iter().enumerate() {
            target[(offset + t) * stride + col] -= 2.0 * dot * vi;
        }
    }

    fn r_diagonal(&self) -> Vec<f64> {
        (0..self.n)
            .map(|k| self.signs[k] * self.work[k * self.n + k])
            .collect()
    }

    fn r(&self) -> Matrix {
        let n = self.n;
        let mut r = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                r.set(i, j, self.signs[i] * self.work[i * n + j]);
            }
        }
        r
    }

    fn q(&self) -> Matrix {
        let (m, n) = (self.m, self.n);
        let mut q = vec![0.0; m * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        for k in (0..n).rev() {
            if let Some(v) = &self.reflectors[k] {
                for j in 0..n {
                    Self::reflect(v, k, &mut q, n, j);
                }
            }
        }
        for i in 0..m {
            for j in 0..n {
                q[i * n + j] *= self.signs[j];
            }
        }
        Matrix::from_vec_unchecked(m, n, q)
    }

    /// First `n` entries of `Qᵀb`.
    fn qt_mul(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        for (k, v) in self.reflectors.iter().enumerate() {
            if let Some(v) = v {
                Self::reflect(v, k, &mut y, 1, 0);
            }
        }
        y.truncate(self.n);
        for (yk, s) in y.iter_mut().zip(&self.signs) {
            *yk *= s;
        }
        y
    }

    fn back_substitute(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s = self.signs[i];
            let mut acc = rhs[i];
            for j in i + 1..n {
                acc -= s * self.work[i * n + j] * x[j];
            }
            x[i] = acc / (s * self.work[i * n + i]);
        }
        x
    }
}

fn check_tall(a: &Matrix) -> Result<()> {
    if a.rows() < a.cols() {
        return Err(RegressError::Shape(format!(
            "QR needs rows ≥ cols, got {}×{}",
            a.rows(),
            a.cols()
        )));
    }
    Ok(())
}

pub fn qr_decompose(a: &Matrix) -> Result<QrFactors> {
    check_tall(a)?;
    let h = Householder::factor(a.rows(), a.cols(), a.as_slice());
    Ok(QrFactors { q: h.q(), r: h.r() })
}

/// Counts diagonal entries of `r` with `|r_ii| > tol · max_j |r_jj|`.
pub fn estimate_rank(r: &Matrix, tol: f64) -> usize {
    let k = r.rows().min(r.cols());
    let diag: Vec<f64> = (0..k).map(|i| r[(i, i)].abs()).collect();
    count_rank(&diag, tol)
}

fn count_rank(diag: &[f64], tol: f64) -> usize {
    let max = diag.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max == 0.0 {
        return 0;
    }
    diag.iter().filter(|v| v.abs() > tol * max).count()
}

/// Minimizes `‖a·x − b‖₂` for a full-column-rank `a`.
pub fn solve_least_squares(a: &Matrix, b: &Vector) -> Result<Vector> {
    least_squares(a, b).map(|s| s.coefficients)
}

/// Like [`solve_least_squares`], also returning the diagonal of `R`.
pub fn least_squares(a: &Matrix, b: &Vector) -> Result<LeastSquaresSolution> {
    least_squares_slice(a, b)
}

pub(crate) fn least_squares_slice(a: &Matrix, b: &[f64]) -> Result<LeastSquaresSolution> {
    check_tall(a)?;
    if b.len() != a.rows() {
        return Err(RegressError::Shape(format!(
            "right-hand side has length {}, design has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let h = Householder::factor(a.rows(), a.cols(), a.as_slice());
    let r_diagonal = h.r_diagonal();
    let rank = count_rank(&r_diagonal, DEFAULT_RANK_TOL);
    if rank < a.cols() {
        return Err(RegressError::RankDeficient {
            rank,
            cols: a.cols(),
        });
    }
    let x = h.back_substitute(&h.qt_mul(b));
    if let Some(index) = x.iter().position(|v| !v.is_finite()) {
        return Err(RegressError::NonFinite { index });
    }
    Ok(LeastSquaresSolution {
        coefficients: Vector::from_vec_unchecked(x),
        r_diagonal,
    })
}
