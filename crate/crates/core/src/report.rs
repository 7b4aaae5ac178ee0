//! Machine-readable report documents. Exact values are always rendered as
//! `"num/den"` strings; only genuinely approximate values become JSON
//! numbers. The shape is pinned by `schema/report.schema.json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dist::{DiscreteDist, PgfForm};
use crate::moments::Monotonicity;
use crate::pgf::{RationalPgf, ScaleParam};
use crate::rational::Real;
use crate::type_check::{PairCheck, TypeCheckReport};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// The checked-in JSON schema every report validates against.
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Results,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: BTreeMap<String, String>, results: Results) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            inputs,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    TypeCheck(TypeCheckReport),
    PairCheck(PairCheck),
    Thin(ThinResult),
    Table(DistributionTable),
    Moments(MomentValidation),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinResult {
    pub input: RationalPgf,
    pub alpha: ScaleParam,
    pub thinned: RationalPgf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub k: u64,
    /// `P(X ≥ k)`
    pub survival: Real,
    /// `P(X < k)`
    pub cdf: Real,
    /// `P(X = k)`
    pub pmf: Real,
}

/// Survival, d.f. and mass for `k = 0..rows`, plus the PGF when it has a
/// closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub distribution: String,
    pub alpha: Option<ScaleParam>,
    pub geometric_parameter: Option<Real>,
    pub pgf: Option<RationalPgf>,
    pub rows: Vec<Row>,
    /// `P(X ≥ rows.len())`, the mass not listed.
    pub tail: Real,
}

impl DistributionTable {
    pub fn build(d: &DiscreteDist, alpha: Option<&ScaleParam>, n: usize) -> Self {
        let rows = (0..n as u64)
            .map(|k| Row {
                k,
                survival: d.survival(k),
                cdf: d.cdf(k),
                pmf: d.pmf(k),
            })
            .collect();
        let pgf = match d.pgf() {
            PgfForm::Exact(q) => Some(q),
            PgfForm::Truncated { .. } => None,
        };
        DistributionTable {
            distribution: d.to_string(),
            alpha: alpha.cloned(),
            geometric_parameter: d.geometric_parameter(),
            pgf,
            rows,
            tail: d.survival(n as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentValidation {
    pub source: String,
    pub order: usize,
    pub prefix: Vec<Real>,
    pub outcome: Monotonicity,
    pub note: String,
}

pub const PREFIX_NOTE: &str =
    "finite-prefix check: a pass is consistent with, not a proof of, being a moment sequence";
