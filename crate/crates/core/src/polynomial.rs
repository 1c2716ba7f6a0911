//! Univariate polynomial regression on the raw monomial basis.

use crate::error::{RegressError, Result};
use crate::linear::{fit_design, LinearFit};
use crate::matrix::{Matrix, Vector};

pub const MAX_DEGREE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolynomialSpec {
    degree: usize,
}

impl PolynomialSpec {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(RegressError::DegreeTooLarge {
                degree,
                max: MAX_DEGREE,
            });
        }
        Ok(PolynomialSpec { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `"x^1"` … `"x^degree"`.
    pub fn feature_names(&self) -> Vec<String> {
        (1..=self.degree).map(|k| format!("x^{k}")).collect()
    }
}

/// Rows `(1, xᵢ, xᵢ², …, xᵢ^degree)`.
///
/// Fails with `NonFinite` if a power overflows.
pub fn expand(x: &Vector, spec: PolynomialSpec) -> Result<Matrix> {
    let cols = spec.degree + 1;
    let mut data = Vec::with_capacity(x.len() * cols);
    for &xi in x.iter() {
        let mut power = 1.0;
        for _ in 0..cols {
            data.push(power);
            power *= xi;
        }
    }
    Matrix::new(x.len(), cols, data)
}

/// Least-squares polynomial of `spec.degree()` through `(x, y)`.
///
/// The returned fit's intercept is the constant term and its features are
/// named `x^1..x^degree`.
pub fn fit_polynomial(x: &Vector, y: &Vector, spec: PolynomialSpec) -> Result<LinearFit> {
    if x.len() != y.len() {
        return Err(RegressError::Shape(format!(
            "x has {} samples, y has {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < spec.degree + 1 {
        return Err(RegressError::UnderDetermined {
            samples: x.len(),
            required: spec.degree + 1,
        });
    }
    fit_design(&expand(x, spec)?, y, spec.feature_names())
}

/// Evaluates a fit produced by [`fit_polynomial`] at new `x` values.
pub fn predict(fit: &LinearFit, x: &Vector) -> Result<Vector> {
    let spec = PolynomialSpec::new(fit.coefficients().len())?;
    let design = expand(x, spec)?;
    Vector::new(
        (0..design.rows())
            .map(|i| fit.predict_row(&design.row(i)[1..]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr::solve_least_squares;
    use proptest::prelude::*;
    use regress_oracle::{monomial_rows, normal_equations_f64};

    const SIZES: [f64; 5] = [1000.0, 1200.0, 1500.0, 1800.0, 2000.0];
    const PRICES: [f64; 5] = [150000.0, 180000.0, 210000.0, 240000.0, 270000.0];

    fn v(values: &[f64]) -> Vector {
        Vector::from_slice(values).unwrap()
    }

    fn spec(d: usize) -> PolynomialSpec {
        PolynomialSpec::new(d).unwrap()
    }

    fn sse(fit: &LinearFit) -> f64 {
        fit.residuals().iter().map(|r| r * r).sum()
    }

    #[test]
    fn expansion_rows() {
        assert_eq!(
            expand(&v(&[2.0]), spec(3)).unwrap().row(0),
            &[1.0, 2.0, 4.0, 8.0]
        );
        let d0 = expand(&v(&[3.0, -1.0]), spec(0)).unwrap();
        assert_eq!((d0.rows(), d0.cols()), (2, 1));
        assert_eq!(d0.as_slice(), &[1.0, 1.0]);
        let d2 = expand(&v(&[1.0, 2.0, 3.0]), spec(2)).unwrap();
        assert_eq!(
            d2.as_slice(),
            &[1.0, 1.0, 1.0, 1.0, 2.0, 4.0, 1.0, 3.0, 9.0]
        );
    }

    #[test]
    fn degree_cap() {
        assert!(PolynomialSpec::new(30).is_ok());
        assert_eq!(
            PolynomialSpec::new(31),
            Err(RegressError::DegreeTooLarge {
                degree: 31,
                max: 30
            })
        );
    }

    #[test]
    fn exact_quadratic() {
        let fit = fit_polynomial(
            &v(&[-1.0, 0.0, 1.0, 2.0]),
            &v(&[1.0, 0.0, 1.0, 4.0]),
            spec(2),
        )
        .unwrap();
        assert!(fit.intercept().abs() < 1e-10);
        assert!(fit.coefficients()[0].abs() < 1e-10);
        assert!((fit.coefficients()[1] - 1.0).abs() < 1e-10);
        assert_eq!(fit.feature_names(), &["x^1".to_string(), "x^2".to_string()]);
    }

    #[test]
    fn degree_zero_is_the_mean() {
        let y = [3.0, 7.0, 11.0, -2.0];
        let fit = fit_polynomial(&v(&[1.0, 2.0, 3.0, 4.0]), &v(&y), spec(0)).unwrap();
        assert!((fit.intercept() - 4.75).abs() < 1e-12);
        assert!(fit.coefficients().is_empty());
    }

    #[test]
    fn too_few_samples_or_duplicates() {
        assert!(matches!(
            fit_polynomial(&v(&[1.0, 2.0]), &v(&[1.0, 2.0]), spec(2)),
            Err(RegressError::UnderDetermined { .. })
        ));
        assert!(matches!(
            fit_polynomial(&v(&[1.0, 1.0, 2.0]), &v(&[1.0, 2.0, 3.0]), spec(2)),
            Err(RegressError::RankDeficient { .. })
        ));
    }

    #[test]
    fn overflowing_monomials_are_rejected() {
        assert!(matches!(
            fit_polynomial(&v(&[1.0, 2.0, 1e200]), &v(&[1.0, 2.0, 3.0]), spec(2)),
            Err(RegressError::NonFinite { .. })
        ));
    }

    #[test]
    fn house_degree_two_matches_exact_oracle() {
        let expected = normal_equations_f64(&monomial_rows(&SIZES, 2), &PRICES).unwrap();
        let fit = fit_polynomial(&v(&SIZES), &v(&PRICES), spec(2)).unwrap();
        let got = [
            fit.intercept(),
            fit.coefficients()[0],
            fit.coefficients()[1],
        ];
        // compare each term at the largest x so a zero coefficient has a scale
        for (k, (g, e)) in got.iter().zip(&expected).enumerate() {
            let term_scale = 2000.0_f64.powi(k as i32);
            assert!(
                (g - e).abs() * term_scale <= 1e-9 * 270000.0,
                "term {k}: {g} vs {e}"
            );
        }
    }

    #[test]
    fn high_degree_on_house_sizes_warns() {
        let fit = fit_polynomial(&v(&SIZES), &v(&PRICES), spec(3)).unwrap();
        assert!(fit.condition_warning().is_none());
        let fit = fit_polynomial(&v(&SIZES), &v(&PRICES), spec(4)).unwrap();
        assert!(fit.condition_warning().is_some());
    }

    #[test]
    fn expand_then_solve_is_the_same_path() {
        let x = v(&SIZES);
        let fit = fit_polynomial(&x, &v(&PRICES), spec(2)).unwrap();
        let beta = solve_least_squares(&expand(&x, spec(2)).unwrap(), &v(&PRICES)).unwrap();
        assert_eq!(beta[0], fit.intercept());
        assert_eq!(&beta[1..], fit.coefficients());
    }

    #[test]
    fn sse_non_increasing_on_house_data() {
        let mut previous = f64::INFINITY;
        for d in 0..=3 {
            let s = sse(&fit_polynomial(&v(&SIZES), &v(&PRICES), spec(d)).unwrap());
            assert!(s <= previous + 1e-6 * 270000.0_f64.powi(2), "degree {d}");
            previous = s;
        }
    }

    #[test]
    fn predict_new_points() {
        let fit = fit_polynomial(
            &v(&[-1.0, 0.0, 1.0, 2.0]),
            &v(&[1.0, 0.0, 1.0, 4.0]),
            spec(2),
        )
        .unwrap();
        let p = predict(&fit, &v(&[3.0, -2.0])).unwrap();
        assert!((p[0] - 9.0).abs() < 1e-9 && (p[1] - 4.0).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn interpolates_distinct_points(
            mut xs in prop::collection::vec(-3.0f64..3.0, 1..=5),
            ys in prop::collection::vec(-10.0f64..10.0, 5),
        ) {
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            xs.dedup_by(|a, b| (*a - *b).abs() < 0.2);
            let n = xs.len();
            let y = &ys[..n];
            let fit = fit_polynomial(&v(&xs), &v(y), spec(n - 1)).unwrap();
            let ymax = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            prop_assert!(fit.residuals().max_abs() <= 1e-8 * ymax.max(1e-300));
        }

        #[test]
        fn training_error_monotone_in_degree(
            xs in prop::collection::vec(-2.0f64..2.0, 8),
            ys in prop::collection::vec(-5.0f64..5.0, 8),
        ) {
            let scale = ys.iter().map(|y| y * y).sum::<f64>().max(1.0);
            let mut previous = f64::INFINITY;
            for d in 0..=4 {
                match fit_polynomial(&v(&xs), &v(&ys), spec(d)) {
                    Ok(fit) => {
                        let s = sse(&fit);
                        prop_assert!(s <= previous + 1e-6 * scale);
                        previous = s;
                    }
                    Err(RegressError::RankDeficient { .. }) => break,
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }
}
