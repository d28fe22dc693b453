//! Structured results shared by reports, sweeps and the command line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::eval::Route;
use crate::model::ModelDescriptor;

/// One weighted integral: `value = coefficient · integral`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub name: String,
    pub coefficient: f64,
    pub integral: f64,
    pub error: f64,
    pub value: f64,
}

impl Term {
    pub fn new(name: &str, coefficient: f64, integral: crate::quad::QuadResult) -> Self {
        Self {
            name: name.to_string(),
            coefficient,
            integral: integral.value,
            error: integral.error,
            value: coefficient * integral.value,
        }
    }

    /// Error of `value`.
    pub fn value_error(&self) -> f64 {
        self.coefficient.abs() * self.error
    }
}

/// A secondary assertion attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub error: f64,
    /// The check passes when `value >= bound` (or `|value| <= bound` for `kind = "abs"`).
    pub bound: f64,
    pub kind: String,
    /// Whether a failure fails the whole report.
    pub required: bool,
    pub passed: bool,
    pub note: String,
}

impl Check {
    pub fn at_least(name: &str, value: f64, error: f64, bound: f64, required: bool) -> Self {
        Self {
            name: name.into(),
            value,
            error,
            bound,
            kind: "min".into(),
            required,
            passed: value >= bound,
            note: String::new(),
        }
    }

    pub fn at_most_abs(name: &str, value: f64, error: f64, bound: f64, required: bool) -> Self {
        Self {
            name: name.into(),
            value,
            error,
            bound,
            kind: "abs".into(),
            required,
            passed: value.abs() <= bound,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = note.into();
        self
    }
}

/// Term-by-term evaluation of one inequality (or of `G^β`) for one function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem: String,
    /// `">="` for inequalities, `"=0"` for the admissibility functional.
    pub relation: String,
    pub model: ModelDescriptor,
    pub function: String,
    pub route: Route,
    pub constants: BTreeMap<String, f64>,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    pub lhs_total: f64,
    pub rhs_total: f64,
    /// `lhs_total − rhs_total`; for `"=0"` the functional value itself.
    pub slack: f64,
    pub slack_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub skipped_nodes: usize,
}

impl InequalityReport {
    /// Largest term magnitude, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.lhs.iter().chain(&self.rhs).map(|t| t.value.abs()).fold(0.0, f64::max)
    }

    pub fn term(&self, name: &str) -> Option<&Term> {
        self.lhs.iter().chain(&self.rhs).find(|t| t.name == name)
    }

    pub(crate) fn finalize(&mut self) {
        let main = match self.relation.as_str() {
            "=0" => self.slack.abs() <= self.tolerance,
            _ => self.slack >= -self.tolerance,
        };
        self.passed = main && self.checks.iter().all(|c| c.passed || !c.required);
    }
}

/// One row of a sharpness sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub i1: f64,
    pub i1_error: f64,
    pub i2: f64,
    pub i2_error: f64,
    pub quotient: f64,
    pub quotient_error: f64,
    /// `𝔍₁ = ∫_{ε<ρ<r} ρ^{−n} dm` by quadrature.
    pub j1: f64,
    pub j1_error: f64,
    /// `C_p ln(r/ε)` on flat models.
    pub j1_exact: Option<f64>,
}

/// Intercept of a fitted gap model `R(ε) ≈ limit + gap`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub method: String,
    pub limit: f64,
    pub coefficients: Vec<f64>,
    pub points: usize,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub theorem: String,
    pub model: ModelDescriptor,
    pub orientation: String,
    pub constants: BTreeMap<String, f64>,
    pub sharp_constant: f64,
    pub rows: Vec<SweepRow>,
    pub extrapolations: Vec<Extrapolation>,
    /// Limit from the primary extrapolation.
    pub limit: f64,
    pub limit_relative_error: f64,
    pub limit_tolerance: f64,
    pub monotone: bool,
    pub checks: Vec<Check>,
    pub passed: bool,
}
