//! JSON result documents. Field order is part of the format.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Linear,
    Poly,
    NlsExponential,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Linear => "linear",
            ModelKind::Poly => "poly",
            ModelKind::NlsExponential => "nls-exponential",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpParamsJson {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Output of `regress fit`, input of `regress predict`.
///
/// Linear and poly fits carry `intercept` and `coefficients`; nls fits carry
/// `params`, `sse`, `iterations` and `status` instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitDocument {
    pub model: ModelKind,
    pub target: String,
    pub features: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intercept: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<IndexMap<String, f64>>,
    pub r2: f64,
    pub mse: f64,
    pub n_samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ExpParamsJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sse: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
}

/// Output of `regress smooth`: an echo of the effective configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothDocument {
    pub model: String,
    pub frac: f64,
    pub robust_iters: usize,
    pub n_samples: usize,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents are plain data");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear_doc() -> FitDocument {
        FitDocument {
            model: ModelKind::Linear,
            target: "price".into(),
            features: vec!["size".into()],
            intercept: Some(1.5),
            coefficients: Some(IndexMap::from([("size".to_string(), 2.0)])),
            r2: 0.5,
            mse: 3.0,
            n_samples: 5,
            params: None,
            sse: None,
            iterations: None,
            status: None,
        }
    }

    fn keys(json: &str) -> Vec<String> {
        json.lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap().to_string())
            .collect()
    }

    #[test]
    fn linear_field_order() {
        let json = to_json(&linear_doc());
        assert_eq!(
            keys(&json),
            [
                "model",
                "target",
                "features",
                "intercept",
                "coefficients",
                "r2",
                "mse",
                "n_samples"
            ]
        );
        assert!(json.contains("\"model\": \"linear\""));
        assert!(json.ends_with("}\n"));
    }

    #[test]
    fn nls_field_order() {
        let doc = FitDocument {
            model: ModelKind::NlsExponential,
            intercept: None,
            coefficients: None,
            params: Some(ExpParamsJson {
                a: 2.0,
                b: 0.5,
                c: 1.0,
            }),
            sse: Some(0.0),
            iterations: Some(7),
            status: Some("converged".into()),
            ..linear_doc()
        };
        let json = to_json(&doc);
        assert_eq!(
            keys(&json),
            [
                "model",
                "target",
                "features",
                "r2",
                "mse",
                "n_samples",
                "params",
                "sse",
                "iterations",
                "status"
            ]
        );
        assert!(json.contains("\"nls-exponential\""));
        let back: FitDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn smooth_field_order() {
        let doc = SmoothDocument {
            model: "lowess".into(),
            frac: 0.3,
            robust_iters: 3,
            n_samples: 5,
        };
        assert_eq!(
            keys(&to_json(&doc)),
            ["model", "frac", "robust_iters", "n_samples"]
        );
    }

    #[test]
    fn coefficient_order_survives_round_trip() {
        let mut doc = linear_doc();
        doc.coefficients = Some(IndexMap::from([
            ("z".to_string(), 1.0),
            ("a".to_string(), 2.0),
        ]));
        let back: FitDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        let names: Vec<&String> = back.coefficients.as_ref().unwrap().keys().collect();
        assert_eq!(names, ["z", "a"]);
    }

    #[test]
    fn unknown_fields_rejected() {
        let json = to_json(&linear_doc()).replacen("{", "{\"extra\": 1,", 1);
        assert!(serde_json::from_str::<FitDocument>(&json).is_err());
    }

    proptest! {
        #[test]
        fn floats_reload_bit_for_bit(
            values in prop::collection::vec(
                any::<f64>().prop_filter("finite", |v| v.is_finite()), 3),
        ) {
            let mut doc = linear_doc();
            doc.intercept = Some(values[0]);
            doc.coefficients = Some(IndexMap::from([("size".to_string(), values[1])]));
            doc.mse = values[2];
            let back: FitDocument = serde_json::from_str(&to_json(&doc)).unwrap();
            prop_assert_eq!(back.intercept.unwrap().to_bits(), values[0].to_bits());
            prop_assert_eq!(back.coefficients.unwrap()["size"].to_bits(), values[1].to_bits());
            prop_assert_eq!(back.mse.to_bits(), values[2].to_bits());
        }
    }
}
