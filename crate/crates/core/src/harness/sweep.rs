//! Sharpness sweeps over the truncated family `u_ε = ψ·max(ε, ρ)^{−γ}`.

use serde::{Deserialize, Serialize};

use super::eval::{Evaluator, PointData};
use super::report::{Check, Extrapolation, SweepRow, SweepTable};
use super::theorems::{base_constants, hardy_gamma, rellich_delta, rellich_gamma};
use crate::error::{Error, Result};
use crate::field::{self, RadialField};
use crate::model::{ModelKind, ModelSpace, Orientation};
use crate::profile::RadialProfile;
use crate::quad::{annulus_integrate, AngularMode};

/// Sweep parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub beta: f64,
    pub r: f64,
    pub big_r: f64,
    /// Strictly decreasing.
    pub eps: Vec<f64>,
    pub orientation: Orientation,
    /// Allowed relative error of the extrapolated limit.
    pub limit_tol: f64,
}

impl SweepParams {
    pub fn new(beta: f64, r: f64, big_r: f64, eps: Vec<f64>) -> Self {
        Self {
            beta,
            r,
            big_r,
            eps,
            orientation: Orientation::MinusRadial,
            limit_tol: 0.01,
        }
    }

    pub fn with_orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps.len() < 3 {
            return Err(Error::param("eps", "a sweep needs at least three values"));
        }
        if self.eps.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::param("eps", "values must be strictly decreasing"));
        }
        if !(self.eps[0] < self.r && *self.eps.last().unwrap() > 0.0 && self.r < self.big_r) {
            return Err(Error::param("eps", "need 0 < eps < r < R"));
        }
        Ok(())
    }
}

/// The five default values `1e−1, …, 1e−5`.
pub fn default_eps() -> Vec<f64> {
    (1..=5).map(|k| 10f64.powi(-k)).collect()
}

#[derive(Clone, Copy)]
enum Kind {
    Hardy,
    Rellich,
}

pub fn hardy_sharpness_sweep(ev: &Evaluator, params: &SweepParams) -> Result<SweepTable> {
    let n = ev.model.dim();
    if !(params.beta < n as f64 - 2.0) {
        return Err(Error::param("beta", "Hardy sweeps require beta < n-2"));
    }
    sweep(ev, params, Kind::Hardy)
}

pub fn rellich_sharpness_sweep(ev: &Evaluator, params: &SweepParams) -> Result<SweepTable> {
    let n = ev.model.dim() as f64;
    if !(params.beta > -2.0 && params.beta < n - 4.0) {
        return Err(Error::param("beta", "Rellich sweeps require -2 < beta < n-4"));
    }
    sweep(ev, params, Kind::Rellich)
}

fn sweep(ev: &Evaluator, params: &SweepParams, kind: Kind) -> Result<SweepTable> {
    params.validate()?;
    let model = &ev.model;
    let n = model.dim();
    let beta = params.beta;
    let (gamma, sharp, theorem) = match kind {
        Kind::Hardy => {
            let g = hardy_gamma(n, beta);
            (g, g * g, "hardy-sweep")
        }
        Kind::Rellich => (rellich_gamma(n, beta), rellich_delta(n, beta), "rellich-sweep"),
    };
    let flat = !matches!(model.kind(), ModelKind::HyperbolicBall { .. });
    let cp = model.model_constant_cp().ok();
    let mut rows = Vec::with_capacity(params.eps.len());
    for &eps in &params.eps {
        let u = RadialField::new(model, params.orientation, RadialProfile::truncated(gamma, eps, params.r, params.big_r)?);
        let ints = ev.integrate(&u, matches!(kind, Kind::Rellich), 2, |d: &PointData| match kind {
            Kind::Hardy => vec![
                d.grad * d.grad * d.rho_u.powf(-beta),
                d.u * d.u * d.rho_u.powf(-2.0 - beta),
            ],
            Kind::Rellich => vec![
                d.lap * d.lap * d.rho_u.powf(-beta),
                d.u * d.u * d.rho_u.powf(-4.0 - beta),
            ],
        })?;
        let (i1, i2) = (ints.values[0], ints.values[1]);
        let q = i1.value / i2.value;
        let q_err = q * (i1.error / i1.value.abs() + i2.error / i2.value.abs());
        let j1 = annulus_integrate(
            model,
            params.orientation,
            |rho, _| vec![rho.powi(-(n as i32))],
            1,
            &[eps, params.r],
            &ev.spec,
            AngularMode::Full,
        )?[0];
        rows.push(SweepRow {
            eps,
            i1: i1.value,
            i1_error: i1.error,
            i2: i2.value,
            i2_error: i2.error,
            quotient: q,
            quotient_error: q_err,
            j1: j1.value,
            j1_error: j1.error,
            j1_exact: match (flat, cp) {
                (true, Some(c)) => Some(c * (params.r / eps).ln()),
                _ => None,
            },
        });
    }
    let extrapolations = vec![inverse_i2_fit(&rows, sharp), log_gap_fit(&rows, params.r, sharp)];
    let limit = extrapolations[0].limit;
    let limit_relative_error = extrapolations[0].relative_error;
    let monotone = rows.windows(2).all(|w| w[1].quotient < w[0].quotient);
    let mut checks = vec![
        Check::at_most_abs("limit_relative_error", limit_relative_error, 0.0, params.limit_tol, true),
        Check::at_least("quotients_strictly_decreasing", if monotone { 1.0 } else { 0.0 }, 0.0, 1.0, true),
    ];
    if flat {
        let worst = rows
            .iter()
            .filter_map(|r| r.j1_exact.map(|e| ((r.j1 - e) / e).abs()))
            .fold(0.0, f64::max);
        checks.push(Check::at_most_abs("j1_relative_error", worst, 0.0, 1e-6, true));
    }
    if let Kind::Rellich = kind {
        checks.push(laplacian_cross_check(model, params, gamma)?);
    }
    let passed = checks.iter().all(|c| c.passed || !c.required);
    let mut constants = base_constants(model, beta);
    constants.insert("gamma".into(), gamma);
    constants.insert("r".into(), params.r);
    constants.insert("R".into(), params.big_r);
    if let Some(c) = cp {
        constants.insert("C_p".into(), c);
    }
    Ok(SweepTable {
        theorem: theorem.into(),
        model: model.descriptor(),
        orientation: orientation_tag(params.orientation).into(),
        constants,
        sharp_constant: sharp,
        rows,
        extrapolations,
        limit,
        limit_relative_error,
        limit_tolerance: params.limit_tol,
        monotone,
        checks,
        passed,
    })
}

pub fn orientation_tag(o: Orientation) -> &'static str {
    match o {
        Orientation::MinusRadial => "minus",
        Orientation::PlusRadial => "plus",
    }
}

/// Straight line through the two smallest-`ε` points of `R` against `1/I₂`.
///
/// On flat models `I₁ = s𝔍₁ + a` and `I₂ = 𝔍₁ + b` with the same `𝔍₁`, so the gap is
/// exactly proportional to `1/I₂` and the intercept is the sharp constant.
fn inverse_i2_fit(rows: &[SweepRow], sharp: f64) -> Extrapolation {
    let k = rows.len();
    let (a, b) = (&rows[k - 2], &rows[k - 1]);
    let (xa, xb) = (1.0 / a.i2, 1.0 / b.i2);
    let slope = (a.quotient - b.quotient) / (xa - xb);
    let limit = b.quotient - slope * xb;
    Extrapolation {
        method: "inverse-i2".into(),
        limit,
        coefficients: vec![limit, slope],
        points: 2,
        relative_error: ((limit - sharp) / sharp).abs(),
    }
}

/// Least-squares fit of `R = c₀ + c₁/ln(r/ε)` on the three smallest `ε`.
fn log_gap_fit(rows: &[SweepRow], r: f64, sharp: f64) -> Extrapolation {
    let tail = &rows[rows.len() - 3..];
    let xs: Vec<f64> = tail.iter().map(|row| 1.0 / (r / row.eps).ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|row| row.quotient).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let limit = my - slope * mx;
    Extrapolation {
        method: "log-gap".into(),
        limit,
        coefficients: vec![limit, slope],
        points: 3,
        relative_error: ((limit - sharp) / sharp).abs(),
    }
}

/// Closed-form against finite-difference Laplacian of `u_ε` (smallest `ε`) at three radii.
fn laplacian_cross_check(model: &ModelSpace, params: &SweepParams, gamma: f64) -> Result<Check> {
    let eps = *params.eps.last().unwrap();
    let u = RadialField::new(model, params.orientation, RadialProfile::truncated(gamma, eps, params.r, params.big_r)?);
    let n = model.dim();
    let omega: Vec<f64> = {
        let raw: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * i as f64).collect();
        let s = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
        raw.into_iter().map(|v| v / s).collect()
    };
    let radii = [0.2 * params.r, 0.6 * params.r, 0.5 * (params.r + params.big_r)];
    let fd = field::FdSteps::default();
    let mut worst: f64 = 0.0;
    for rho in radii {
        let x = model.polar_point(params.orientation, rho, &omega);
        let exact = field::radial_field_laplacian(&u, &x)?
            .ok_or_else(|| Error::Precondition("no closed-form Laplacian for the sweep family".into()))?;
        let num = field::numeric_laplacian(model, &u, &x, &fd)?.value;
        worst = worst.max(((num - exact) / exact).abs());
    }
    Ok(Check::at_most_abs("laplacian_closed_form_vs_fd", worst, 0.0, 1e-4, true).with_note("three check radii"))
}
