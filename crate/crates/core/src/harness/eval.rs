//! Volume integrals of pointwise expressions in `u`, `F(∇u)`, `Δu` and `ρ_u`.
//!
//! Radial fields with closed-form Laplacians reduce to one radial integral against
//! `C_p s_k^{n−1}`; anything else goes through the polar product rule with pointwise
//! finite-difference calculus, or through box Monte Carlo.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{self, FdSteps, ScalarField, Symmetry};
use crate::model::{ModelKind, ModelSpace, Orientation};
use crate::quad::{annulus_integrate, box_montecarlo, radial_integrate_vec, AngularMode, QuadResult, QuadratureSpec};

/// Which integration path to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Radial closed form when available, polar quadrature otherwise.
    Auto,
    Radial,
    Polar,
    MonteCarlo,
}

/// Pointwise data handed to integrands.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointData {
    pub u: f64,
    /// `F(∇u) = F*(du)`.
    pub grad: f64,
    /// `Δu`; NaN when the integrand did not ask for it.
    pub lap: f64,
    /// Sign of `u` (0 on `{u = 0}`).
    pub sign: f64,
    pub rho_u: f64,
    /// `D_{k,h}(ρ_u)`.
    pub d: f64,
}

/// Integrals with the path that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Integrals {
    pub values: Vec<QuadResult>,
    pub route: Route,
    /// Nodes skipped because `du ≈ 0` made the Laplacian unreliable.
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct Evaluator {
    pub model: ModelSpace,
    pub spec: QuadratureSpec,
    pub fd: FdSteps,
    pub route: Route,
}

impl Evaluator {
    pub fn new(model: &ModelSpace, spec: &QuadratureSpec) -> Self {
        Self {
            model: model.clone(),
            spec: spec.clone(),
            fd: FdSteps::default(),
            route: Route::Auto,
        }
    }

    pub fn with_route(mut self, route: Route) -> Self {
        self.route = route;
        self
    }

    /// The route [`Self::integrate`] would take for `u`.
    pub fn resolve(&self, u: &dyn ScalarField) -> Result<Route> {
        let radial_ok = u.as_radial().is_some_and(|r| r.has_closed_form());
        match self.route {
            Route::Auto if radial_ok => Ok(Route::Radial),
            Route::Auto => Ok(Route::Polar),
            Route::Radial if !radial_ok => Err(Error::Precondition(format!(
                "{} has no closed-form radial reduction on this model",
                u.name()
            ))),
            r => Ok(r),
        }
    }

    /// `∫ f(data(x)) dm` for `m` integrands.
    pub fn integrate<F>(&self, u: &dyn ScalarField, needs_lap: bool, m: usize, f: F) -> Result<Integrals>
    where
        F: Fn(&PointData) -> Vec<f64> + Sync,
    {
        if u.dim() != self.model.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.model.dim(),
                got: u.dim(),
            });
        }
        let route = self.resolve(u)?;
        let skipped = AtomicUsize::new(0);
        let values = match route {
            Route::Radial => self.radial(u, m, &f)?,
            Route::Polar => self.polar(u, needs_lap, m, &f, &skipped)?,
            Route::MonteCarlo => self.monte_carlo(u, needs_lap, m, &f, &skipped)?,
            Route::Auto => unreachable!("resolved above"),
        };
        Ok(Integrals {
            values,
            route,
            skipped: skipped.into_inner(),
        })
    }

    fn radial<F>(&self, u: &dyn ScalarField, m: usize, f: &F) -> Result<Vec<QuadResult>>
    where
        F: Fn(&PointData) -> Vec<f64> + Sync,
    {
        let field = u.as_radial().expect("checked by resolve");
        let cp = self.model.model_constant_cp()?;
        let cmp = self.model.comparison();
        let n = self.model.dim() as i32;
        let sign = field.sign();
        let mut breaks = vec![0.0];
        breaks.extend(field.profile.breakpoints());
        let vals = radial_integrate_vec(
            |rho| {
                let [v, f1, f2] = field.profile.eval(rho);
                if v == 0.0 && f1 == 0.0 {
                    return vec![0.0; m];
                }
                let data = PointData {
                    u: sign * v,
                    grad: f1.abs(),
                    lap: sign * self.model.radial_operator(f1, f2, rho),
                    sign: if v == 0.0 { 0.0 } else { sign },
                    rho_u: rho,
                    d: cmp.d_unchecked(rho),
                };
                let w = cp * cmp.s_unchecked(rho).powi(n - 1);
                f(&data).into_iter().map(|y| w * y).collect()
            },
            m,
            &breaks,
            &self.spec,
        )?;
        Ok(vals)
    }

    /// Pointwise data at `x`, or `None` when the Laplacian is unreliable there.
    pub fn point_data(&self, u: &dyn ScalarField, x: &[f64], needs_lap: bool) -> Result<Option<PointData>> {
        let val = u.value(x);
        let du = u
            .differential(x)
            .unwrap_or_else(|| field::differential_fd(u, x, self.fd.diff_rel));
        let grad = self.model.norm_at(x)?.dual(&du);
        let lap = if needs_lap {
            let l = field::laplacian(&self.model, u, x, &self.fd)?;
            if l.near_critical {
                return Ok(None);
            }
            l.value
        } else {
            f64::NAN
        };
        let sign = if val > 0.0 {
            1.0
        } else if val < 0.0 {
            -1.0
        } else {
            0.0
        };
        let rho_u = self.model.rho_u(sign, x)?;
        Ok(Some(PointData {
            u: val,
            grad,
            lap,
            sign,
            rho_u,
            d: self.model.comparison().d_unchecked(rho_u),
        }))
    }

    fn polar<F>(&self, u: &dyn ScalarField, needs_lap: bool, m: usize, f: &F, skipped: &AtomicUsize) -> Result<Vec<QuadResult>>
    where
        F: Fn(&PointData) -> Vec<f64> + Sync,
    {
        let (orientation, hint) = u.polar_hint();
        let outer = match hint.last() {
            Some(&b) => b,
            None => polar_cover(&self.model, u.support_radius())?,
        };
        let mut breaks = vec![0.0];
        breaks.extend(hint.iter().copied().filter(|b| *b > 0.0 && *b <= outer));
        if *breaks.last().unwrap() < outer {
            breaks.push(outer);
        }
        let mode = match u.symmetry() {
            Symmetry::Axial => AngularMode::Axial,
            Symmetry::General => AngularMode::Full,
        };
        let failure = std::sync::Mutex::new(None);
        let out = annulus_integrate(
            &self.model,
            orientation,
            |rho, omega| {
                let x = self.model.polar_point(orientation, rho, omega);
                match self.point_data(u, &x, needs_lap) {
                    Ok(Some(d)) if d.u == 0.0 && d.grad == 0.0 => vec![0.0; m],
                    Ok(Some(d)) => f(&d),
                    Ok(None) => {
                        skipped.fetch_add(1, Ordering::Relaxed);
                        vec![0.0; m]
                    }
                    Err(e) => {
                        failure.lock().unwrap().get_or_insert(e);
                        vec![f64::NAN; m]
                    }
                }
            },
            m,
            &breaks,
            &self.spec,
            mode,
        );
        if let Some(e) = failure.into_inner().unwrap() {
            return Err(e);
        }
        out
    }

    fn monte_carlo<F>(&self, u: &dyn ScalarField, needs_lap: bool, m: usize, f: &F, skipped: &AtomicUsize) -> Result<Vec<QuadResult>>
    where
        F: Fn(&PointData) -> Vec<f64> + Sync,
    {
        let half = u.support_radius();
        if !half.is_finite() {
            return Err(Error::Precondition("Monte Carlo needs a compactly supported field".into()));
        }
        let half = half.min(self.model.domain_radius());
        let exclude = 1e-3 * half;
        let r = box_montecarlo(
            &self.model,
            |x| match self.point_data(u, x, needs_lap) {
                Ok(Some(d)) if d.u == 0.0 && d.grad == 0.0 => vec![0.0; m],
                Ok(Some(d)) => f(&d),
                Ok(None) => {
                    skipped.fetch_add(1, Ordering::Relaxed);
                    vec![0.0; m]
                }
                Err(_) => vec![f64::NAN; m],
            },
            m,
            half,
            exclude,
            &self.spec,
        )?;
        Ok(r.values.iter().zip(&r.stderr).map(|(v, e)| QuadResult::new(*v, 3.0 * e)).collect())
    }
}

/// Polar radius (in either chart) covering the Euclidean ball of radius `r`.
fn polar_cover(model: &ModelSpace, r: f64) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::Precondition(
            "polar quadrature needs a compactly supported field".into(),
        ));
    }
    Ok(match model.kind() {
        ModelKind::RandersFlat { t, .. } => r * (1.0 + t.abs()),
        ModelKind::EuclideanFlat { .. } => r,
        ModelKind::HyperbolicBall { k, .. } => {
            let a = (-k).sqrt();
            let r = r.min((1.0 - 1e-9) / a);
            2.0 / a * (a * r).atanh()
        }
    })
}

/// `ϱ_{u,β}` as a function of the sign of `u` and `ρ_u`, with `N = β + 2`.
pub fn varrho(model: &ModelSpace, sign: f64, exponent: f64, rho_u: f64) -> f64 {
    let lap = |o| model.radial_laplacian(exponent, o, rho_u).unwrap_or(f64::NAN);
    if sign > 0.0 {
        -lap(Orientation::MinusRadial)
    } else if sign < 0.0 {
        lap(Orientation::PlusRadial)
    } else {
        0.0
    }
}
