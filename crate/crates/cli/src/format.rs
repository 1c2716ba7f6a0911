//! Float rendering and plot-data files.

use std::fs;
use std::io;
use std::path::Path;

/// Shortest decimal that parses back to the same `f64`; exponent notation
/// for very large or small magnitudes.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

pub const PLOT_HEADER: &str = "x\ty_actual\ty_predicted";

/// TSV body for [`emit_plot_data`]. Rows are sorted by `x` (stable, so tied
/// `x` keep input order).
pub fn render_plot_data(x: &[f64], y_actual: &[f64], y_predicted: &[f64]) -> io::Result<String> {
    if x.len() != y_actual.len() || x.len() != y_predicted.len() {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!(
                "plot columns differ in length: {}, {}, {}",
                x.len(),
                y_actual.len(),
                y_predicted.len()
            ),
        ));
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut out = String::from(PLOT_HEADER);
    out.push('\n');
    for i in order {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            fmt_f64(x[i]),
            fmt_f64(y_actual[i]),
            fmt_f64(y_predicted[i])
        ));
    }
    Ok(out)
}

pub fn emit_plot_data(
    x: &[f64],
    y_actual: &[f64],
    y_predicted: &[f64],
    path: &Path,
) -> io::Result<()> {
    fs::write(path, render_plot_data(x, y_actual, y_predicted)?)
}
