//! Run configuration: a sectioned TOML file overridden by command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::{default_eps, Route};
use crate::model::{ModelDescriptor, ModelSpace};
use crate::quad::QuadratureSpec;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub kind: String,
    pub n: usize,
    pub t: Option<f64>,
    pub k: Option<f64>,
    pub measure: String,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            kind: "randers".into(),
            n: 3,
            t: None,
            k: None,
            measure: "bh".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamSection {
    pub beta: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub eps: Vec<f64>,
    /// `minus`, `plus` or `both`.
    pub orientation: String,
    /// Battery size for single-function reports; 0 picks the command default.
    pub count: usize,
    /// Random pairs for the dual-norm campaign.
    pub samples: usize,
    pub seed: u64,
    /// Relative tolerance; overrides the quadrature setting when given.
    pub tol: Option<f64>,
    /// `auto`, `radial`, `polar` or `monte-carlo`.
    pub route: Route,
}

impl Default for ParamSection {
    fn default() -> Self {
        Self {
            beta: 0.0,
            r: 0.5,
            big_r: 1.0,
            eps: default_eps(),
            orientation: "both".into(),
            count: 0,
            samples: 100_000,
            seed: 0x5eed,
            tol: None,
            route: Route::Auto,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
}

/// Everything a run needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub theorem: Option<String>,
    pub model: ModelSection,
    pub params: ParamSection,
    pub quadrature: QuadratureSpec,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn descriptor(&self) -> ModelDescriptor {
        let m = &self.model;
        let (t, k) = match m.kind.as_str() {
            "randers" => (Some(m.t.unwrap_or(0.5)), None),
            "hyperbolic" => (None, Some(m.k.unwrap_or(-1.0))),
            _ => (None, None),
        };
        ModelDescriptor {
            kind: m.kind.clone(),
            n: m.n,
            t,
            k,
            measure: m.measure.clone(),
        }
    }

    pub fn build_model(&self) -> Result<ModelSpace> {
        ModelSpace::try_from(&self.descriptor()).map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::Config(format!("{name}: {reason}")),
            other => other,
        })
    }

    pub fn quadrature_spec(&self) -> Result<QuadratureSpec> {
        let mut q = self.quadrature.clone();
        if let Some(t) = self.params.tol {
            q.rel_tol = t;
        }
        q.seed = self.params.seed;
        q.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(q)
    }

    /// Checks the preconditions of `theorem` before anything is evaluated.
    pub fn validate(&self, theorem: &str) -> Result<()> {
        let model = self.build_model()?;
        let n = model.dim() as f64;
        let beta = self.params.beta;
        let fail = |msg: String| Err(Error::Config(msg));
        if !beta.is_finite() {
            return fail("beta must be finite".into());
        }
        match theorem {
            "hardy" | "hardy-bv" | "hardy-sweep" | "uncertainty" if !(n - 2.0 > beta) => {
                return fail(format!("{theorem} requires beta < n-2 (n = {n}, beta = {beta})"))
            }
            "rellich" | "rellich-sweep" if !(beta > -2.0 && beta < n - 4.0) => {
                return fail(format!("{theorem} requires -2 < beta < n-4 (n = {n}, beta = {beta})"))
            }
            "gbeta-check" if !(n > beta + 4.0) => {
                return fail(format!("G^beta of the radial battery is finite only for n > beta+4 (n = {n}, beta = {beta})"))
            }
            "rellich-bv" if !(beta >= 0.0 && beta < n - 2.0) => {
                return fail(format!("rellich-bv requires 0 <= beta < n-2 (n = {n}, beta = {beta})"))
            }
            _ => {}
        }
        if matches!(theorem, "hardy-bv" | "rellich-bv" | "poincare") && !(model.curvature() < 0.0) {
            return fail(format!("{theorem} requires a model with k < 0"));
        }
        if matches!(theorem, "hardy-sweep" | "rellich-sweep") {
            let p = &self.params;
            if p.eps.len() < 3 || p.eps.windows(2).any(|w| !(w[1] < w[0])) {
                return fail("eps must list at least three strictly decreasing values".into());
            }
            if !(p.eps[0] < p.r && p.r < p.big_r && *p.eps.last().unwrap() > 0.0) {
                return fail("need 0 < eps < r < R".into());
            }
        }
        if !matches!(self.params.orientation.as_str(), "minus" | "plus" | "both") {
            return fail(format!("unknown orientation `{}`", self.params.orientation));
        }
        self.quadrature_spec()?;
        Ok(())
    }
}
