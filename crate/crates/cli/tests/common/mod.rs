#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn data(name: &str) -> PathBuf {
    workspace_root().join("fixtures/data").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    workspace_root().join("fixtures/golden").join(name)
}

pub fn oracle(name: &str) -> serde_json::Value {
    let path = workspace_root().join("fixtures/oracle").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// One documented command. `{data}` and `{golden}` in `args` expand to the
/// fixture directories; each `(flag, file)` output is written to a scratch
/// directory and compared with `fixtures/golden/<file>`.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub outputs: &'static [(&'static str, &'static str)],
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "simple linear fit",
        args: &[
            "fit",
            "--model",
            "linear",
            "--input",
            "{data}/house_simple.csv",
            "--target",
            "price",
            "--features",
            "size",
        ],
        outputs: &[
            ("--out", "house_simple_fit.json"),
            ("--plot", "house_simple_plot.tsv"),
        ],
    },
    GoldenCase {
        name: "multiple linear fit",
        args: &[
            "fit",
            "--model",
            "linear",
            "--input",
            "{data}/house_multiple.csv",
            "--target",
            "price",
            "--features",
            "size,bedrooms",
        ],
        outputs: &[
            ("--out", "house_multiple_fit.json"),
            ("--plot", "house_multiple_plot.tsv"),
        ],
    },
    GoldenCase {
        name: "lowess smooth",
        args: &[
            "smooth",
            "--input",
            "{data}/house_lowess.csv",
            "--x",
            "size",
            "--y",
            "price",
            "--frac",
            "0.3",
        ],
        outputs: &[
            ("--out", "house_lowess_smooth.json"),
            ("--plot", "house_lowess_plot.tsv"),
        ],
    },
    GoldenCase {
        name: "quadratic fit",
        args: &[
            "fit",
            "--model",
            "poly",
            "--degree",
            "2",
            "--input",
            "{data}/house_simple.csv",
            "--target",
            "price",
            "--features",
            "size",
        ],
        outputs: &[("--out", "house_poly2_fit.json")],
    },
    GoldenCase {
        name: "exponential fit",
        args: &[
            "fit",
            "--model",
            "nls-exponential",
            "--input",
            "{data}/exp_growth.csv",
            "--target",
            "y",
            "--features",
            "x",
        ],
        outputs: &[
            ("--out", "exp_growth_fit.json"),
            ("--plot", "exp_growth_plot.tsv"),
        ],
    },
    GoldenCase {
        name: "predict from saved fit",
        args: &[
            "predict",
            "--fit",
            "{golden}/house_simple_fit.json",
            "--input",
            "{data}/house_simple.csv",
        ],
        outputs: &[("--out", "house_simple_pred.csv")],
    },
];

/// `(description, args, expected exit code)` for inputs that must fail.
pub const FAILURE_CASES: &[(&str, &[&str], i32)] = &[
    (
        "ragged csv row",
        &[
            "fit",
            "--model",
            "linear",
            "--input",
            "{data}/malformed_ragged.csv",
            "--target",
            "y",
            "--features",
            "x",
        ],
        2,
    ),
    (
        "non-numeric cell",
        &[
            "fit",
            "--model",
            "linear",
            "--input",
            "{data}/malformed_text.csv",
            "--target",
            "price",
            "--features",
            "size",
        ],
        2,
    ),
    (
        "collinear features",
        &[
            "fit",
            "--model",
            "linear",
            "--input",
            "{data}/collinear.csv",
            "--target",
            "y",
            "--features",
            "x,x2",
        ],
        3,
    ),
    (
        "poly without degree",
        &[
            "fit",
            "--model",
            "poly",
            "--input",
            "{data}/house_simple.csv",
            "--target",
            "price",
            "--features",
            "size",
        ],
        1,
    ),
];

pub fn expand(arg: &str) -> String {
    let root = workspace_root();
    arg.replace("{data}", &root.join("fixtures/data").to_string_lossy())
        .replace("{golden}", &root.join("fixtures/golden").to_string_lossy())
}

pub fn regress(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regress"))
        .args(args)
        .output()
        .expect("spawn regress")
}

pub struct CaseRun {
    pub output: Output,
    /// `(golden file name, produced bytes)`.
    pub files: Vec<(&'static str, Vec<u8>)>,
}

pub fn run_case(case: &GoldenCase, scratch: &Path) -> CaseRun {
    let mut args: Vec<String> = case.args.iter().map(|a| expand(a)).collect();
    for (flag, file) in case.outputs {
        args.push(flag.to_string());
        args.push(scratch.join(file).to_string_lossy().into_owned());
    }
    let output = regress(&args);
    let files = case
        .outputs
        .iter()
        .map(|(_, file)| (*file, std::fs::read(scratch.join(file)).unwrap_or_default()))
        .collect();
    CaseRun { output, files }
}
