//! Scalar test functions on a model and the calculus needed by the inequalities:
//! differentials, gradients `∇u = L⁻¹(du)`, divergence-form Laplacians and the
//! weight `ϱ` built from distance powers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{ModelKind, ModelSpace, Orientation};
use crate::profile::{Cutoff, RadialProfile};
use crate::vector::{dot, euclid, Covector, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Depends on `x` only through `(|x'|, x_n)`.
    Axial,
    General,
}

/// A scalar function on a model domain.
pub trait ScalarField: Send + Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> f64;

    /// Exact differential, when known.
    fn differential(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Euclidean coordinate radius outside which the field vanishes.
    fn support_radius(&self) -> f64;

    fn symmetry(&self) -> Symmetry {
        Symmetry::General
    }

    /// Polar chart and radial break points suited to integrating this field.
    fn polar_hint(&self) -> (Orientation, Vec<f64>) {
        (Orientation::MinusRadial, Vec::new())
    }

    fn as_radial(&self) -> Option<&RadialField> {
        None
    }
}

/// Finite-difference settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    /// Relative step for differentials.
    pub diff_rel: f64,
    /// Relative step for the flux differences of the Laplacian.
    pub lap_rel: f64,
    /// `|du|` below which a point counts as critical.
    pub critical: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        Self {
            diff_rel: 1e-6,
            lap_rel: 1e-4,
            critical: 1e-8,
        }
    }
}

/// `u = f(ρ₋)` (`MinusRadial`) or `u = −f(ρ₊)` (`PlusRadial`).
#[derive(Clone, Debug)]
pub struct RadialField {
    pub model: ModelSpace,
    pub orientation: Orientation,
    pub profile: RadialProfile,
}

impl RadialField {
    pub fn new(model: &ModelSpace, orientation: Orientation, profile: RadialProfile) -> Self {
        Self {
            model: model.clone(),
            orientation,
            profile,
        }
    }

    pub fn sign(&self) -> f64 {
        match self.orientation {
            Orientation::MinusRadial => 1.0,
            Orientation::PlusRadial => -1.0,
        }
    }

    /// The profile derivatives evaluate the field through the model closed forms:
    /// true when the profile is nonincreasing or the model is reversible.
    pub fn has_closed_form(&self) -> bool {
        self.model.has_radial_closed_form() && (self.profile.is_nonincreasing() || self.model.is_reversible())
    }
}

/// `dρ₊` or `dρ₋` at `x ≠ 0`.
pub fn distance_differential(model: &ModelSpace, orientation: Orientation, x: &[f64]) -> Result<Vec<f64>> {
    let r = euclid(x);
    if r == 0.0 {
        return Err(Error::ZeroVector {
            what: "distance differential at the base point".into(),
        });
    }
    let n = x.len();
    let mut d: Vec<f64> = x.iter().map(|c| c / r).collect();
    match model.kind() {
        ModelKind::RandersFlat { t, .. } => {
            d[n - 1] += match orientation {
                Orientation::MinusRadial => -t,
                Orientation::PlusRadial => t,
            }
        }
        ModelKind::EuclideanFlat { .. } => {}
        ModelKind::HyperbolicBall { k, .. } => {
            let lam = 2.0 / (1.0 + k * r * r);
            d.iter_mut().for_each(|c| *c *= lam);
        }
    }
    Ok(d)
}

fn distance_support(model: &ModelSpace, orientation: Orientation, big_r: f64) -> f64 {
    match model.kind() {
        ModelKind::RandersFlat { t, .. } => {
            let _ = orientation;
            big_r / (1.0 - t.abs())
        }
        ModelKind::EuclideanFlat { .. } => big_r,
        ModelKind::HyperbolicBall { k, .. } => {
            let a = (-k).sqrt();
            (0.5 * a * big_r).tanh() / a
        }
    }
}

impl ScalarField for RadialField {
    fn name(&self) -> String {
        let tag = match self.orientation {
            Orientation::MinusRadial => "f(rho-)",
            Orientation::PlusRadial => "-f(rho+)",
        };
        format!("{tag}, f={}", self.profile.label())
    }

    fn dim(&self) -> usize {
        self.model.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        match self.model.rho(self.orientation, x) {
            Ok(rho) => self.sign() * self.profile.eval(rho)[0],
            Err(_) => 0.0,
        }
    }

    fn differential(&self, x: &[f64]) -> Option<Vec<f64>> {
        let rho = self.model.rho(self.orientation, x).ok()?;
        let f1 = self.profile.eval(rho)[1];
        if f1 == 0.0 {
            return Some(vec![0.0; x.len()]);
        }
        let d = distance_differential(&self.model, self.orientation, x).ok()?;
        Some(d.into_iter().map(|c| self.sign() * f1 * c).collect())
    }

    fn support_radius(&self) -> f64 {
        distance_support(&self.model, self.orientation, self.profile.support())
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::Axial
    }

    fn polar_hint(&self) -> (Orientation, Vec<f64>) {
        (self.orientation, self.profile.breakpoints())
    }

    fn as_radial(&self) -> Option<&RadialField> {
        Some(self)
    }
}

/// `ρ₋^{−N}` (`MinusRadial`) or `−ρ₊^{−N}` (`PlusRadial`), singular at the origin.
#[derive(Clone, Debug)]
pub struct DistancePower {
    pub model: ModelSpace,
    pub orientation: Orientation,
    pub exponent: f64,
}

impl ScalarField for DistancePower {
    fn name(&self) -> String {
        format!("distance power N={}", self.exponent)
    }

    fn dim(&self) -> usize {
        self.model.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let sign = match self.orientation {
            Orientation::MinusRadial => 1.0,
            Orientation::PlusRadial => -1.0,
        };
        match self.model.rho(self.orientation, x) {
            Ok(rho) => sign * rho.powf(-self.exponent),
            Err(_) => f64::NAN,
        }
    }

    fn differential(&self, x: &[f64]) -> Option<Vec<f64>> {
        let sign = match self.orientation {
            Orientation::MinusRadial => 1.0,
            Orientation::PlusRadial => -1.0,
        };
        let rho = self.model.rho(self.orientation, x).ok()?;
        let f1 = -self.exponent * rho.powf(-self.exponent - 1.0);
        let d = distance_differential(&self.model, self.orientation, x).ok()?;
        Some(d.into_iter().map(|c| sign * f1 * c).collect())
    }

    fn support_radius(&self) -> f64 {
        f64::INFINITY
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::Axial
    }
}

/// One Gaussian bump `a·exp(−|x−c|²/w²)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bump {
    pub amplitude: f64,
    pub center: Vec<f64>,
    pub width: f64,
}

/// Sum of Gaussian bumps times a Euclidean cut-off `ψ(|x|)`.
///
/// Sign-changing and, unless every center lies on the `x_n` axis, not axially symmetric.
#[derive(Clone, Debug)]
pub struct BumpMixture {
    pub bumps: Vec<Bump>,
    pub cutoff: Option<Cutoff>,
    n: usize,
}

impl BumpMixture {
    pub fn new(n: usize, bumps: Vec<Bump>, cutoff: Option<Cutoff>) -> Result<Self> {
        for b in &bumps {
            if b.center.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.center.len(),
                });
            }
            if !(b.width > 0.0) {
                return Err(Error::param("width", "bump widths must be positive"));
            }
        }
        Ok(Self { bumps, cutoff, n })
    }

    /// `count` bumps with centers, widths and signed amplitudes drawn from `seed`.
    pub fn random(n: usize, count: usize, radius: f64, seed: u64, cutoff: Option<Cutoff>) -> Result<Self> {
        use rand::Rng;
        let mut rng = crate::sampling::rng(seed, 0);
        let bumps = (0..count)
            .map(|_| {
                let center: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..radius)).collect();
                Bump {
                    amplitude: rng.gen_range(-1.0..1.0),
                    center,
                    width: rng.gen_range(0.3 * radius..radius),
                }
            })
            .collect();
        Self::new(n, bumps, cutoff)
    }

    fn raw(&self, x: &[f64]) -> (f64, Vec<f64>) {
        let mut v = 0.0;
        let mut g = vec![0.0; self.n];
        for b in &self.bumps {
            let w2 = b.width * b.width;
            let d2: f64 = x.iter().zip(&b.center).map(|(a, c)| (a - c) * (a - c)).sum();
            let e = b.amplitude * (-d2 / w2).exp();
            v += e;
            for (gi, (a, c)) in g.iter_mut().zip(x.iter().zip(&b.center)) {
                *gi += -2.0 * (a - c) / w2 * e;
            }
        }
        (v, g)
    }
}

impl ScalarField for BumpMixture {
    fn name(&self) -> String {
        format!("bump mixture ({} bumps)", self.bumps.len())
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn value(&self, x: &[f64]) -> f64 {
        let (v, _) = self.raw(x);
        match &self.cutoff {
            Some(c) => v * c.eval(euclid(x))[0],
            None => v,
        }
    }

    fn differential(&self, x: &[f64]) -> Option<Vec<f64>> {
        let (v, mut g) = self.raw(x);
        if let Some(c) = &self.cutoff {
            let r = euclid(x);
            let [p, p1, _] = c.eval(r);
            for (gi, xi) in g.iter_mut().zip(x) {
                *gi = *gi * p + if r > 0.0 { v * p1 * xi / r } else { 0.0 };
            }
        }
        Some(g)
    }

    fn support_radius(&self) -> f64 {
        self.cutoff.map_or(f64::INFINITY, |c| c.big_r)
    }

    fn symmetry(&self) -> Symmetry {
        let n = self.n;
        if self.bumps.iter().all(|b| b.center[..n - 1].iter().all(|c| *c == 0.0)) {
            Symmetry::Axial
        } else {
            Symmetry::General
        }
    }

}

/// `c·u` for a constant `c`.
#[derive(Clone)]
pub struct ScaledField {
    pub factor: f64,
    pub inner: Arc<dyn ScalarField>,
}

impl ScalarField for ScaledField {
    fn name(&self) -> String {
        format!("{}*({})", self.factor, self.inner.name())
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.factor * self.inner.value(x)
    }

    fn differential(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.inner
            .differential(x)
            .map(|d| d.into_iter().map(|c| self.factor * c).collect())
    }

    fn support_radius(&self) -> f64 {
        self.inner.support_radius()
    }

    fn symmetry(&self) -> Symmetry {
        self.inner.symmetry()
    }

    fn polar_hint(&self) -> (Orientation, Vec<f64>) {
        self.inner.polar_hint()
    }
}

/// Central-difference differential with step `h·max(1,|x|)`.
pub fn differential_fd(u: &dyn ScalarField, x: &[f64], rel: f64) -> Vec<f64> {
    let h = rel * euclid(x).max(1.0);
    let mut p = x.to_vec();
    (0..x.len())
        .map(|i| {
            p[i] = x[i] + h;
            let a = u.value(&p);
            p[i] = x[i] - h;
            let b = u.value(&p);
            p[i] = x[i];
            (a - b) / (2.0 * h)
        })
        .collect()
}

fn diff_raw(u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Vec<f64> {
    u.differential(x).unwrap_or_else(|| differential_fd(u, x, fd.diff_rel))
}

pub fn differential(u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Covector {
    Covector::new(diff_raw(u, x, fd))
}

/// `∇u = L_x⁻¹(du)`.
pub fn gradient(model: &ModelSpace, u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<Vector> {
    let norm = model.norm_at(x)?;
    Ok(Vector::new(norm.legendre_inv(&diff_raw(u, x, fd))))
}

/// `F(∇u) = F*(du)`.
pub fn gradient_norm(model: &ModelSpace, u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<f64> {
    let norm = model.norm_at(x)?;
    Ok(norm.dual(&diff_raw(u, x, fd)))
}

/// A Laplacian value together with a reliability flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplacianValue {
    pub value: f64,
    /// `du ≈ 0` at the point while the neighbouring fluxes are not: the nonlinear
    /// Laplacian is not differentiable there and the value is unreliable.
    pub near_critical: bool,
}

/// `Δu = σ⁻¹ ∂_i(σ (∇u)^i)` by central differences of the flux `σ∇u`.
pub fn numeric_laplacian(model: &ModelSpace, u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<LaplacianValue> {
    let n = x.len();
    let h = fd.lap_rel * euclid(x).max(1.0);
    let sigma0 = model.density(x)?;
    let du0 = diff_raw(u, x, fd);
    let mut p = x.to_vec();
    let mut total = 0.0;
    let mut flux_mag: f64 = 0.0;
    for i in 0..n {
        let mut side = [0.0; 2];
        for (j, s) in [1.0, -1.0].into_iter().enumerate() {
            p[i] = x[i] + s * h;
            let norm = model.norm_at(&p)?;
            let sigma = model.density(&p)?;
            let grad = norm.legendre_inv(&diff_raw(u, &p, fd));
            side[j] = sigma * grad[i];
            flux_mag = flux_mag.max(grad[i].abs());
        }
        p[i] = x[i];
        total += (side[0] - side[1]) / (2.0 * h);
    }
    let value = total / sigma0;
    if !value.is_finite() {
        return Err(Error::NonFinite {
            context: "numeric Laplacian".into(),
            location: euclid(x),
        });
    }
    Ok(LaplacianValue {
        value,
        near_critical: euclid(&du0) < fd.critical && flux_mag > fd.critical,
    })
}

/// Closed-form Laplacian of a radial field; `None` when no closed form applies.
pub fn radial_field_laplacian(field: &RadialField, x: &[f64]) -> Result<Option<f64>> {
    if !field.has_closed_form() {
        return Ok(None);
    }
    let rho = field.model.rho(field.orientation, x)?;
    let [_, f1, f2] = field.profile.eval(rho);
    if rho == 0.0 {
        return Ok(Some(if f1 == 0.0 {
            field.sign() * f2 * field.dim() as f64
        } else {
            f64::NAN
        }));
    }
    Ok(Some(field.sign() * field.model.radial_operator(f1, f2, rho)))
}

/// `Δu`, closed form for radial fields and finite differences otherwise.
pub fn laplacian(model: &ModelSpace, u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<LaplacianValue> {
    if let Some(r) = u.as_radial() {
        if let Some(v) = radial_field_laplacian(r, x)? {
            return Ok(LaplacianValue {
                value: v,
                near_critical: false,
            });
        }
    }
    numeric_laplacian(model, u, x, fd)
}

/// `div(u∇u) = F²(∇u) + uΔu`.
pub fn div_u_grad_u(model: &ModelSpace, u: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<LaplacianValue> {
    let g = gradient_norm(model, u, x, fd)?;
    let lap = laplacian(model, u, x, fd)?;
    Ok(LaplacianValue {
        value: g * g + u.value(x) * lap.value,
        near_critical: lap.near_critical,
    })
}

/// `ϱ = −Δ(ρ₋^{−N})` where `u > 0` and `Δ(−ρ₊^{−N})` where `u < 0`, closed form.
pub fn varrho_density(model: &ModelSpace, sign: f64, exponent: f64, x: &[f64]) -> Result<f64> {
    if sign > 0.0 {
        let rho = model.rho_minus(x)?;
        Ok(-model.radial_laplacian(exponent, Orientation::MinusRadial, rho)?)
    } else if sign < 0.0 {
        let rho = model.rho_plus(x)?;
        model.radial_laplacian(exponent, Orientation::PlusRadial, rho)
    } else {
        Ok(0.0)
    }
}

/// [`varrho_density`] by finite differences of the distance powers.
pub fn varrho_density_fd(model: &ModelSpace, sign: f64, exponent: f64, x: &[f64], fd: &FdSteps) -> Result<f64> {
    let orientation = if sign > 0.0 {
        Orientation::MinusRadial
    } else if sign < 0.0 {
        Orientation::PlusRadial
    } else {
        return Ok(0.0);
    };
    let field = DistancePower {
        model: model.clone(),
        orientation,
        exponent,
    };
    let lap = numeric_laplacian(model, &field, x, fd)?.value;
    Ok(if sign > 0.0 { -lap } else { lap })
}

/// `⟨du, ∇v⟩`, used to check symmetry of Dirichlet forms.
pub fn pairing(model: &ModelSpace, u: &dyn ScalarField, v: &dyn ScalarField, x: &[f64], fd: &FdSteps) -> Result<f64> {
    let gv = gradient(model, v, x, fd)?;
    Ok(dot(&diff_raw(u, x, fd), gv.as_slice()))
}
