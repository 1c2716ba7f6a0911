//! Writes the oracle golden values under `fixtures/oracle/`.
//!
//! Run with `cargo run -p regress-oracle --bin gen-goldens`.

use regress_oracle::{
    lowess_brute_force, monomial_rows, normal_equations_f64, simple_closed_form, with_intercept,
};
use serde_json::json;
use std::path::PathBuf;

const SIZES: [f64; 5] = [1000.0, 1200.0, 1500.0, 1800.0, 2000.0];
const BEDROOMS: [f64; 5] = [2.0, 3.0, 3.0, 4.0, 4.0];
const PRICES: [f64; 5] = [150000.0, 180000.0, 210000.0, 240000.0, 270000.0];

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/oracle");
    std::fs::create_dir_all(&dir)?;

    let (b0, b1) = simple_closed_form(&SIZES, &PRICES);
    let ybar = PRICES.iter().sum::<f64>() / 5.0;
    let ss_res: f64 = SIZES
        .iter()
        .zip(&PRICES)
        .map(|(x, y)| (y - b0 - b1 * x).powi(2))
        .sum();
    let ss_tot: f64 = PRICES.iter().map(|y| (y - ybar).powi(2)).sum();
    write(
        &dir,
        "house_simple.json",
        json!({ "intercept": b0, "slope": b1, "r2": 1.0 - ss_res / ss_tot }),
    )?;

    let features: Vec<Vec<f64>> = SIZES
        .iter()
        .zip(&BEDROOMS)
        .map(|(&s, &b)| vec![s, b])
        .collect();
    let beta = normal_equations_f64(&with_intercept(&features), &PRICES).expect("full rank");
    write(
        &dir,
        "house_multiple.json",
        json!({ "intercept": beta[0], "size": beta[1], "bedrooms": beta[2] }),
    )?;

    let beta = normal_equations_f64(&monomial_rows(&SIZES, 2), &PRICES).expect("full rank");
    write(&dir, "house_poly2.json", json!({ "coefficients": beta }))?;

    let smoothed = lowess_brute_force(&SIZES, &PRICES, 0.3, 3);
    write(
        &dir,
        "house_lowess.json",
        json!({ "frac": 0.3, "robust_iters": 3, "x": SIZES, "y_smoothed": smoothed }),
    )?;
    Ok(())
}

fn write(dir: &std::path::Path, name: &str, value: serde_json::Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    std::fs::write(dir.join(name), text)
}
