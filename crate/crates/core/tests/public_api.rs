use regress_core::nonlinear::{default_initial_params, ExponentialModel};
use regress_core::{
    diagnostics, fit_multiple, fit_polynomial, fit_simple, levenberg_marquardt, predict, smooth,
    LmConfig, LowessConfig, Matrix, PolynomialSpec, RegressError, Vector,
};
use regress_oracle::{normal_equations_f64, rel_diff, simple_closed_form, with_intercept};

const SIZES: [f64; 5] = [1000.0, 1200.0, 1500.0, 1800.0, 2000.0];
const BEDROOMS: [f64; 5] = [2.0, 3.0, 3.0, 4.0, 4.0];
const PRICES: [f64; 5] = [150000.0, 180000.0, 210000.0, 240000.0, 270000.0];

fn v(values: &[f64]) -> Vector {
    Vector::from_slice(values).unwrap()
}

#[test]
fn simple_fit_predicts_new_sizes() {
    let fit = fit_simple(&v(&SIZES), &v(&PRICES)).unwrap();
    let (b0, b1) = simple_closed_form(&SIZES, &PRICES);
    let new = Matrix::from_rows(&[[1600.0], [2500.0]]).unwrap();
    let got = predict(&fit, &new).unwrap();
    for (g, x) in got.iter().zip([1600.0, 2500.0]) {
        assert!(rel_diff(*g, b0 + b1 * x) < 1e-9);
    }
    let report = diagnostics(&fit, &v(&PRICES)).unwrap();
    assert!(rel_diff(report.r_squared, 169.0 / 170.0) < 1e-12);
}

#[test]
fn multiple_fit_against_normal_equations() {
    let features: Vec<Vec<f64>> = SIZES
        .iter()
        .zip(&BEDROOMS)
        .map(|(s, b)| vec![*s, *b])
        .collect();
    let expected = normal_equations_f64(&with_intercept(&features), &PRICES).unwrap();
    let fit = fit_multiple(
        &Matrix::from_rows(&features).unwrap(),
        &v(&PRICES),
        &["size".into(), "bedrooms".into()],
    )
    .unwrap();
    assert!(rel_diff(fit.intercept(), expected[0]) < 1e-9);
    assert!(rel_diff(fit.coefficients()[0], expected[1]) < 1e-9);
    assert!(rel_diff(fit.coefficients()[1], expected[2]) < 1e-9);
}

#[test]
fn polynomial_degree_errors() {
    assert!(matches!(
        PolynomialSpec::new(31),
        Err(RegressError::DegreeTooLarge { .. })
    ));
    let spec = PolynomialSpec::new(5).unwrap();
    assert!(matches!(
        fit_polynomial(&v(&SIZES), &v(&PRICES), spec),
        Err(RegressError::UnderDetermined {
            samples: 5,
            required: 6
        })
    ));
}

#[test]
fn exponential_from_default_start() {
    let xs: Vec<f64> = (0..5).map(f64::from).collect();
    let ys: Vec<f64> = xs.iter().map(|x| 2.0 * (0.5 * x).exp() + 1.0).collect();
    let res = levenberg_marquardt(
        &ExponentialModel,
        &v(&xs),
        &v(&ys),
        &default_initial_params(3),
        &LmConfig::default(),
    )
    .unwrap();
    assert!(res.status.is_converged());
    for (p, want) in res.params.iter().zip([2.0, 0.5, 1.0]) {
        assert!(rel_diff(*p, want) < 1e-6);
    }
}

#[test]
fn exponential_on_house_sizes_overflows_at_start() {
    let err = levenberg_marquardt(
        &ExponentialModel,
        &v(&SIZES),
        &v(&PRICES),
        &default_initial_params(3),
        &LmConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, RegressError::EvalDomain(_)));
}

#[test]
fn lowess_house_example() {
    let res = smooth(&v(&SIZES), &v(&PRICES), LowessConfig::new(0.3, 3).unwrap()).unwrap();
    assert_eq!(res.x_sorted.as_slice(), &SIZES);
    for (s, y) in res.y_smoothed.iter().zip(&PRICES) {
        assert!(rel_diff(*s, *y) < 1e-10);
    }
    assert!(matches!(
        LowessConfig::new(1.5, 3),
        Err(RegressError::InvalidFrac(_))
    ));
}
