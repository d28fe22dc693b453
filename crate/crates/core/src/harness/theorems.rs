//! Hardy, Rellich, Poincaré and uncertainty inequalities, term by term.

use std::collections::BTreeMap;

use super::eval::{varrho, Evaluator, Integrals, PointData, Route};
use super::report::{Check, InequalityReport, Term};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::model::ModelSpace;

/// Relative band within which `G^β(u)` counts as zero.
pub const GBETA_BAND: f64 = 1e-6;

/// `C = |k| min(1, n−1)² / (4 λ_F²)`, the Brezis–Vázquez constant of the model.
pub fn bv_constant(model: &ModelSpace) -> Result<f64> {
    let k = model.curvature();
    if !(k < 0.0) {
        return Err(Error::Precondition(format!(
            "Brezis-Vazquez terms need negative curvature, got k = {k}"
        )));
    }
    let m = 1.0f64.min(model.dim() as f64 - 1.0);
    let lam = model.reversibility();
    Ok(k.abs() * m * m / (4.0 * lam * lam))
}

/// The constant of the weighted Poincaré inequality, `1/C`.
pub fn poincare_constant(model: &ModelSpace) -> Result<f64> {
    Ok(1.0 / bv_constant(model)?)
}

pub fn hardy_gamma(n: usize, beta: f64) -> f64 {
    (n as f64 - 2.0 - beta) / 2.0
}

pub fn rellich_gamma(n: usize, beta: f64) -> f64 {
    (n as f64 - 4.0 - beta) / 2.0
}

/// `δ = (n+β)²(n−4−β)²/16`.
pub fn rellich_delta(n: usize, beta: f64) -> f64 {
    let n = n as f64;
    (n + beta).powi(2) * (n - 4.0 - beta).powi(2) / 16.0
}

/// Model and exponent constants recorded in every report.
pub fn base_constants(model: &ModelSpace, beta: f64) -> BTreeMap<String, f64> {
    let mut c = BTreeMap::new();
    c.insert("n".into(), model.dim() as f64);
    c.insert("beta".into(), beta);
    c.insert("k".into(), model.curvature());
    c.insert("h".into(), model.s_curvature());
    c.insert("t".into(), model.drift());
    c.insert("lambda_F".into(), model.reversibility());
    c.insert("Lambda_F".into(), model.uniformity());
    c
}

fn tolerance(ev: &Evaluator, route: Route, terms: &[&Term]) -> f64 {
    let rel = match route {
        Route::Radial => ev.spec.rel_tol,
        Route::Polar => ev.spec.rel_tol.max(1e-6),
        _ => ev.spec.rel_tol,
    };
    let scale: f64 = terms.iter().map(|t| t.value.abs()).sum();
    let err: f64 = terms.iter().map(|t| t.value_error()).sum();
    ev.spec.abs_tol + rel * scale + err
}

struct Draft {
    theorem: &'static str,
    constants: BTreeMap<String, f64>,
    lhs: Vec<Term>,
    rhs: Vec<Term>,
    checks: Vec<Check>,
}

impl Draft {
    fn build(self, ev: &Evaluator, u: &dyn ScalarField, ints: &Integrals) -> InequalityReport {
        let lhs_total: f64 = self.lhs.iter().map(|t| t.value).sum();
        let rhs_total: f64 = self.rhs.iter().map(|t| t.value).sum();
        let all: Vec<&Term> = self.lhs.iter().chain(&self.rhs).collect();
        let slack_error = all.iter().map(|t| t.value_error()).sum();
        let mut r = InequalityReport {
            theorem: self.theorem.into(),
            relation: ">=".into(),
            model: ev.model.descriptor(),
            function: u.name(),
            route: ints.route,
            constants: self.constants,
            tolerance: tolerance(ev, ints.route, &all),
            lhs: self.lhs,
            rhs: self.rhs,
            lhs_total,
            rhs_total,
            slack: lhs_total - rhs_total,
            slack_error,
            passed: false,
            checks: self.checks,
            skipped_nodes: ints.skipped,
        };
        r.finalize();
        r
    }
}

fn require_hardy_range(n: usize, beta: f64) -> Result<()> {
    if !(beta < n as f64 - 2.0) {
        return Err(Error::param("beta", format!("Hardy inequalities require beta < n-2 = {}", n - 2)));
    }
    Ok(())
}

fn pw(rho: f64, p: f64) -> f64 {
    rho.powf(p)
}

/// `∫F²(∇u)/ρ_u^β ≥ γ²∫u²/ρ_u^{2+β} + (n−1)γ∫u²D/ρ_u^{2+β}`.
pub fn hardy_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    hardy_impl(ev, u, beta, false)
}

/// [`hardy_report`] plus `(C/Λ_F)∫u²/ρ_u^β`.
pub fn hardy_bv_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    hardy_impl(ev, u, beta, true)
}

fn hardy_impl(ev: &Evaluator, u: &dyn ScalarField, beta: f64, bv: bool) -> Result<InequalityReport> {
    let n = ev.model.dim();
    require_hardy_range(n, beta)?;
    let c_bv = if bv { Some(bv_constant(&ev.model)?) } else { None };
    let gamma = hardy_gamma(n, beta);
    let ints = ev.integrate(u, false, 4, |d: &PointData| {
        let w = pw(d.rho_u, -beta);
        let q = d.u * d.u * pw(d.rho_u, -2.0 - beta);
        vec![d.grad * d.grad * w, q, q * d.d, d.u * d.u * w]
    })?;
    let v = &ints.values;
    let mut constants = base_constants(&ev.model, beta);
    constants.insert("gamma".into(), gamma);
    let lhs = vec![Term::new("F^2(grad u)/rho^beta", 1.0, v[0])];
    let d_coef = (n as f64 - 1.0) * gamma;
    let mut rhs = vec![
        Term::new("u^2/rho^(2+beta)", gamma * gamma, v[1]),
        Term::new("u^2 D/rho^(2+beta)", d_coef, v[2]),
    ];
    let mut checks = Vec::new();
    if let Some(c) = c_bv {
        constants.insert("C".into(), c);
        let lam = ev.model.uniformity();
        rhs.push(Term::new("u^2/rho^beta", c / lam, v[3]));
        checks.push(Check::at_least("d_remainder_positive", v[2].value, v[2].error, 0.0, false));
    }
    let theorem = if bv { "hardy-bv" } else { "hardy" };
    Ok(Draft {
        theorem,
        constants,
        lhs,
        rhs,
        checks,
    }
    .build(ev, u, &ints))
}

/// `(1/C)∫F²(∇v)/ρ_v^{n−2} ≥ ∫v²/ρ_v^{n−2}`.
pub fn poincare_report(ev: &Evaluator, v: &dyn ScalarField) -> Result<InequalityReport> {
    let n = ev.model.dim();
    let k_const = poincare_constant(&ev.model)?;
    let p = -(n as f64 - 2.0);
    let ints = ev.integrate(v, false, 2, |d: &PointData| {
        let w = pw(d.rho_u, p);
        vec![d.grad * d.grad * w, d.u * d.u * w]
    })?;
    let mut constants = base_constants(&ev.model, n as f64 - 2.0);
    constants.insert("poincare_constant".into(), k_const);
    Ok(Draft {
        theorem: "poincare",
        constants,
        lhs: vec![Term::new("F^2(grad v)/rho^(n-2)", k_const, ints.values[0])],
        rhs: vec![Term::new("v^2/rho^(n-2)", 1.0, ints.values[1])],
        checks: Vec::new(),
    }
    .build(ev, v, &ints))
}

/// `(∫ρ_u^{2+β}u²)^{1/2}(∫F²(∇u)/ρ_u^β)^{1/2} ≥ γ∫u²`.
pub fn uncertainty_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    let n = ev.model.dim();
    require_hardy_range(n, beta)?;
    if ev.model.curvature() > 0.0 {
        return Err(Error::Precondition("the uncertainty principle needs K <= 0".into()));
    }
    let gamma = hardy_gamma(n, beta);
    let ints = ev.integrate(u, false, 4, |d: &PointData| {
        let u2 = d.u * d.u;
        vec![
            u2 * pw(d.rho_u, 2.0 + beta),
            d.grad * d.grad * pw(d.rho_u, -beta),
            u2,
            u2 * pw(d.rho_u, -2.0 - beta),
        ]
    })?;
    let v = &ints.values;
    let (a, b) = (v[0].value, v[1].value);
    let lhs_total = (a * b).sqrt();
    let lhs_err = if a > 0.0 && b > 0.0 {
        0.5 * ((b / a).sqrt() * v[0].error + (a / b).sqrt() * v[1].error)
    } else {
        0.0
    };
    let rhs = vec![Term::new("u^2", gamma, v[2])];
    let rhs_total = rhs[0].value;
    let slack = lhs_total - rhs_total;
    // Hölder gives slack ≥ √A(√B − γ√I₂), the margin left by the Hardy step
    let hardy_margin = a.sqrt() * (b.sqrt() - gamma * v[3].value.sqrt());
    let mut constants = base_constants(&ev.model, beta);
    constants.insert("gamma".into(), gamma);
    let lhs = vec![
        Term::new("rho^(2+beta) u^2", 1.0, v[0]),
        Term::new("F^2(grad u)/rho^beta", 1.0, v[1]),
    ];
    let slack_error = lhs_err + rhs[0].value_error();
    let tol = ev.spec.abs_tol + ev.spec.rel_tol.max(if ints.route == Route::Radial { 0.0 } else { 1e-6 }) * (lhs_total + rhs_total.abs()) + slack_error;
    let mut report = InequalityReport {
        theorem: "uncertainty".into(),
        relation: ">=".into(),
        model: ev.model.descriptor(),
        function: u.name(),
        route: ints.route,
        constants,
        lhs,
        rhs,
        lhs_total,
        rhs_total,
        slack,
        slack_error,
        tolerance: tol,
        passed: false,
        checks: vec![
            Check::at_least("slack_minus_hardy_margin", slack - hardy_margin, slack_error, -tol, true)
                .with_note("Holder step: slack >= sqrt(A)(sqrt(B) - gamma sqrt(I2))"),
            Check::at_least("hardy_margin", hardy_margin, slack_error, -tol, true),
        ],
        skipped_nodes: ints.skipped,
    };
    report.finalize();
    Ok(report)
}

/// `G^β(u) = ∫[u²ϱ_{u,β} + 2ρ_u^{−β−2} div(u∇u)] dm`.
pub fn gbeta_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    let big_n = beta + 2.0;
    let model = ev.model.clone();
    let ints = ev.integrate(u, true, 2, |d: &PointData| {
        let div = d.grad * d.grad + d.u * d.lap;
        vec![
            d.u * d.u * varrho(&model, d.sign, big_n, d.rho_u),
            2.0 * pw(d.rho_u, -big_n) * div,
        ]
    })?;
    let v = &ints.values;
    let lhs = vec![
        Term::new("u^2 varrho", 1.0, v[0]),
        Term::new("2 div(u grad u)/rho^(beta+2)", 1.0, v[1]),
    ];
    let g = lhs[0].value + lhs[1].value;
    let scale = lhs[0].value.abs() + lhs[1].value.abs();
    let err = lhs[0].error + lhs[1].error;
    let mut constants = base_constants(&ev.model, beta);
    constants.insert("N".into(), big_n);
    let mut r = InequalityReport {
        theorem: "gbeta".into(),
        relation: "=0".into(),
        model: ev.model.descriptor(),
        function: u.name(),
        route: ints.route,
        constants,
        lhs,
        rhs: Vec::new(),
        lhs_total: g,
        rhs_total: 0.0,
        slack: g,
        slack_error: err,
        tolerance: GBETA_BAND * scale + ev.spec.abs_tol,
        passed: false,
        checks: Vec::new(),
        skipped_nodes: ints.skipped,
    };
    r.finalize();
    Ok(r)
}

fn require_membership(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    let g = gbeta_report(ev, u, beta)?;
    if !g.passed {
        return Err(Error::Precondition(format!(
            "{} is not admissible: G^beta = {:e} exceeds {:e}",
            u.name(),
            g.slack,
            g.tolerance
        )));
    }
    Ok(g)
}

fn gbeta_check(g: &InequalityReport) -> Check {
    Check::at_most_abs("gbeta", g.slack, g.slack_error, g.tolerance, true)
}

/// `∫(Δu)²/ρ_u^β ≥ δ∫u²/ρ_u^{4+β} + ((n−4−β)(n+β)(n−1)(n−2)/4)∫u²D/ρ_u^{4+β}`.
pub fn rellich_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    let n = ev.model.dim();
    let nf = n as f64;
    if !(beta > -2.0 && beta < nf - 4.0) {
        return Err(Error::param("beta", format!("Rellich requires -2 < beta < n-4 = {}", nf - 4.0)));
    }
    let g = require_membership(ev, u, beta)?;
    let delta = rellich_delta(n, beta);
    let ints = ev.integrate(u, true, 3, |d: &PointData| {
        let q = d.u * d.u * pw(d.rho_u, -4.0 - beta);
        vec![d.lap * d.lap * pw(d.rho_u, -beta), q, q * d.d]
    })?;
    let v = &ints.values;
    let mut constants = base_constants(&ev.model, beta);
    constants.insert("gamma".into(), rellich_gamma(n, beta));
    constants.insert("delta".into(), delta);
    let d_coef = (nf - 4.0 - beta) * (nf + beta) * (nf - 1.0) * (nf - 2.0) / 4.0;
    Ok(Draft {
        theorem: "rellich",
        constants,
        lhs: vec![Term::new("(Lap u)^2/rho^beta", 1.0, v[0])],
        rhs: vec![
            Term::new("u^2/rho^(4+beta)", delta, v[1]),
            Term::new("u^2 D/rho^(4+beta)", d_coef, v[2]),
        ],
        checks: vec![gbeta_check(&g)],
    }
    .build(ev, u, &ints))
}

/// The five-term refinement for `k < 0`, with the intermediate inequality as a check.
pub fn rellich_bv_report(ev: &Evaluator, u: &dyn ScalarField, beta: f64) -> Result<InequalityReport> {
    let n = ev.model.dim();
    let nf = n as f64;
    if !(beta >= 0.0 && beta < nf - 2.0) {
        return Err(Error::param("beta", format!("refined Rellich requires 0 <= beta < n-2 = {}", nf - 2.0)));
    }
    let c = bv_constant(&ev.model)?;
    let lam = ev.model.uniformity();
    let g = require_membership(ev, u, beta)?;
    let delta = rellich_delta(n, beta);
    let c0 = (nf + beta) * (nf - beta - 4.0) / 4.0;
    let ints = ev.integrate(u, true, 7, |d: &PointData| {
        let u2 = d.u * d.u;
        let r2 = d.rho_u * d.rho_u;
        let wb = pw(d.rho_u, -beta);
        let inner = d.lap + c0 * d.u / r2;
        vec![
            d.lap * d.lap * wb,
            u2 * wb / (r2 * r2),
            u2 * d.d * wb / (r2 * r2),
            u2 * wb / r2,
            u2 * d.d * wb / r2,
            u2 * wb,
            inner * inner * wb,
        ]
    })?;
    let v = &ints.values;
    let mut constants = base_constants(&ev.model, beta);
    constants.insert("C".into(), c);
    constants.insert("delta".into(), delta);
    constants.insert("gamma".into(), rellich_gamma(n, beta));
    let rhs = vec![
        Term::new("u^2/rho^(beta+4)", delta, v[1]),
        Term::new("u^2 D/rho^(beta+4)", (nf - 1.0) * (nf - 2.0) * c0, v[2]),
        Term::new("u^2/rho^(beta+2)", (nf - 2.0 - beta) * (nf - 2.0 + beta) * c / (2.0 * lam), v[3]),
        Term::new("u^2 D/rho^(beta+2)", (nf - 1.0) * (nf - 2.0) * c / lam, v[4]),
        Term::new("u^2/rho^beta", c * c / (lam * lam), v[5]),
    ];
    // intermediate lemma: ∫ρ^{−β}[Δu + c0 u/ρ²]² ≤ I0 − δI1 − (n−1)(n−2)c0 I2 − 2c0(C/Λ) I3
    let lemma_rhs = v[0].value - delta * v[1].value - (nf - 1.0) * (nf - 2.0) * c0 * v[2].value - 2.0 * c0 * c / lam * v[3].value;
    let lemma_err = v[0].error + delta * v[1].error + ((nf - 1.0) * (nf - 2.0) * c0).abs() * v[2].error + (2.0 * c0 * c / lam).abs() * v[3].error + v[6].error;
    let lemma_tol = ev.spec.abs_tol + 1e-6 * (v[0].value.abs() + v[6].value.abs()) + lemma_err;
    let in_range = beta >= -2.0 && beta < nf - 4.0;
    let note = if in_range { "" } else { "outside the lemma's range -2 <= beta < n-4; informational" };
    let checks = vec![
        gbeta_check(&g),
        Check::at_least("lemma_lhs_nonnegative", v[6].value, v[6].error, -lemma_tol, true),
        Check::at_least("lemma_slack", lemma_rhs - v[6].value, lemma_err, -lemma_tol, in_range).with_note(note),
        Check::at_least("d_remainder_positive", v[2].value.min(v[4].value), v[2].error + v[4].error, 0.0, false),
    ];
    Ok(Draft {
        theorem: "rellich-bv",
        constants,
        lhs: vec![Term::new("(Lap u)^2/rho^beta", 1.0, v[0])],
        rhs,
        checks,
    }
    .build(ev, u, &ints))
}
