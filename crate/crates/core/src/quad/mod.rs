//! Deterministic quadrature: graded radial rules, sphere rules, polar products over
//! model annuli and a stratified Monte Carlo fallback.
//!
//! All reductions go through [`pairwise_sum`] over node values collected in a fixed
//! order, so results do not depend on the number of worker threads.

pub mod annulus;
pub mod gauss;
pub mod montecarlo;
pub mod radial;
pub mod sphere;

pub use annulus::{annulus_integrate, AngularMode};
pub use gauss::GaussRule;
pub use montecarlo::{box_montecarlo, McResult};
pub use radial::{radial_integrate, radial_integrate_vec};
pub use sphere::{sphere_area, sphere_integrate, AxialRule, SphereRule};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per radial panel.
    pub gauss_order: usize,
    /// Equal subdivisions of every geometric panel on the coarse pass.
    pub subdivisions: usize,
    /// Lower bound on the number of panels per interval.
    pub min_panels: usize,
    /// Halvings toward the origin when an interval starts at 0.
    pub origin_levels: u32,
    /// Nodes per polar angle of the tensor sphere rule.
    pub sphere_order: usize,
    /// Nodes in `cos θ` for axisymmetric integrands.
    pub axial_order: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            gauss_order: 10,
            subdivisions: 2,
            min_panels: 8,
            origin_levels: 40,
            sphere_order: 8,
            axial_order: 24,
            mc_samples: 200_000,
            seed: 0x5eed,
            rel_tol: 1e-8,
            abs_tol: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.gauss_order < 2 || self.sphere_order < 2 || self.axial_order < 2 {
            return Err(Error::param("quadrature", "node counts must be at least 2"));
        }
        if self.subdivisions == 0 || self.min_panels == 0 {
            return Err(Error::param("quadrature", "panel counts must be positive"));
        }
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::param("quadrature", "tolerances must be positive"));
        }
        Ok(())
    }
}

/// A quadrature value with its error estimate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

impl QuadResult {
    pub fn new(value: f64, error: f64) -> Self {
        Self { value, error }
    }

    pub fn scaled(self, c: f64) -> Self {
        Self {
            value: c * self.value,
            error: c.abs() * self.error,
        }
    }
}

impl std::ops::Add for QuadResult {
    type Output = QuadResult;
    fn add(self, o: QuadResult) -> QuadResult {
        QuadResult::new(self.value + o.value, self.error + o.error)
    }
}

/// Fixed-shape pairwise summation.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 8 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

pub(crate) fn check_finite(vals: &[Vec<f64>], locs: &[f64], context: &str) -> Result<()> {
    for (v, &x) in vals.iter().zip(locs) {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite {
                context: context.to_string(),
                location: x,
            });
        }
    }
    Ok(())
}

/// `Σ_k w_k v_k[c]` for every component `c`.
pub(crate) fn weighted_sums(vals: &[Vec<f64>], weights: &[f64], m: usize) -> Vec<f64> {
    (0..m)
        .map(|c| {
            let terms: Vec<f64> = vals.iter().zip(weights).map(|(v, w)| w * v[c]).collect();
            pairwise_sum(&terms)
        })
        .collect()
}
