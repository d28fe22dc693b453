//! Model manifolds: flat Randers space, Euclidean space and the hyperbolic ball.
//!
//! Every model is based at the origin and has infinite injectivity radius, so the
//! distance functions, polar charts and volume densities are available in closed form.
//! Curvature bound `k`, the S-curvature bound `h = 0` and the asymmetry constants are
//! exact model data.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::MinkowskiNorm;
use crate::quad::sphere_area;
use crate::vector::{dot, euclid};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    /// `F(x,y) = |y| + t·y_n` on `R^n`.
    RandersFlat { n: usize, t: f64 },
    EuclideanFlat { n: usize },
    /// Poincaré ball of constant curvature `k < 0`, radius `1/√|k|` in coordinates.
    HyperbolicBall { n: usize, k: f64 },
}

/// Radial weight for a custom measure `w(½(ρ₊+ρ₋))·dm_BH`.
#[derive(Clone)]
pub struct CustomDensity {
    pub name: String,
    pub weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomDensity({})", self.name)
    }
}

#[derive(Clone, Debug)]
pub enum Measure {
    BusemannHausdorff,
    HolmesThompson,
    Custom(CustomDensity),
}

impl Measure {
    pub fn tag(&self) -> String {
        match self {
            Measure::BusemannHausdorff => "bh".into(),
            Measure::HolmesThompson => "ht".into(),
            Measure::Custom(c) => format!("custom:{}", c.name),
        }
    }
}

/// Which distance a radial object is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// Built on `ρ₋`; the nonnegative family `u = f(ρ₋)`.
    MinusRadial,
    /// Built on `ρ₊`; the nonpositive family `v = −f(ρ₊)`.
    PlusRadial,
}

/// `s_k`, its derivative and `D_{k,h}(t) = t(s_k'/s_k − h) − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonFns {
    pub k: f64,
    pub h: f64,
}

impl ComparisonFns {
    pub fn new(k: f64, h: f64) -> Self {
        Self { k, h }
    }

    fn domain(&self, t: f64) -> Result<()> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::OutsideDomain(format!("comparison functions need t > 0, got {t}")));
        }
        if self.k > 0.0 && t >= std::f64::consts::FRAC_PI_2 / self.k.sqrt() {
            return Err(Error::OutsideDomain(format!(
                "t = {t} exceeds π/(2√k) for k = {}",
                self.k
            )));
        }
        Ok(())
    }

    pub fn s(&self, t: f64) -> Result<f64> {
        self.domain(t)?;
        Ok(self.s_unchecked(t))
    }

    pub(crate) fn s_unchecked(&self, t: f64) -> f64 {
        let k = self.k;
        if k == 0.0 {
            t
        } else if k < 0.0 {
            let a = (-k).sqrt();
            (a * t).sinh() / a
        } else {
            let a = k.sqrt();
            (a * t).sin() / a
        }
    }

    pub fn s_prime(&self, t: f64) -> Result<f64> {
        self.domain(t)?;
        let k = self.k;
        Ok(if k == 0.0 {
            1.0
        } else if k < 0.0 {
            ((-k).sqrt() * t).cosh()
        } else {
            (k.sqrt() * t).cos()
        })
    }

    /// `t·s_k'(t)/s_k(t)`, accurate as `t → 0`.
    pub(crate) fn t_log_derivative(&self, t: f64) -> f64 {
        let k = self.k;
        if k == 0.0 {
            return 1.0;
        }
        let x = k.abs().sqrt() * t;
        let sign = if k < 0.0 { 1.0 } else { -1.0 };
        if x < 1e-3 {
            // x coth x = 1 + x²/3 − x⁴/45 + 2x⁶/945, and x cot x with alternating signs
            let x2 = x * x;
            1.0 + sign * x2 / 3.0 - x2 * x2 / 45.0 + sign * 2.0 * x2 * x2 * x2 / 945.0
        } else if k < 0.0 {
            x / x.tanh()
        } else {
            x / x.tan()
        }
    }

    pub fn d(&self, t: f64) -> Result<f64> {
        self.domain(t)?;
        Ok(self.d_unchecked(t))
    }

    pub(crate) fn d_unchecked(&self, t: f64) -> f64 {
        let base = self.t_log_derivative(t) - 1.0;
        let base = if self.k != 0.0 && (self.k.abs().sqrt() * t) < 1e-3 {
            // avoid forming 1 + small − 1
            let x2 = self.k.abs() * t * t;
            let sign = if self.k < 0.0 { 1.0 } else { -1.0 };
            sign * x2 / 3.0 - x2 * x2 / 45.0 + sign * 2.0 * x2 * x2 * x2 / 945.0
        } else {
            base
        };
        base - t * self.h
    }
}

/// The norm on one tangent space, `F_x(y) = scale · base(y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalNorm {
    pub scale: f64,
    pub base: MinkowskiNorm,
}

impl LocalNorm {
    pub fn norm(&self, y: &[f64]) -> f64 {
        self.scale * self.base.norm_raw(y)
    }

    pub fn dual(&self, xi: &[f64]) -> f64 {
        self.base.dual_raw(xi) / self.scale
    }

    /// `∇f = L⁻¹(df)` for this tangent space.
    pub fn legendre_inv(&self, xi: &[f64]) -> Vec<f64> {
        let s2 = self.scale * self.scale;
        self.base.legendre_inv_raw(xi).into_iter().map(|c| c / s2).collect()
    }
}

/// A model manifold with a chosen measure, based at the origin.
#[derive(Clone, Debug)]
pub struct ModelSpace {
    kind: ModelKind,
    measure: Measure,
}

impl ModelSpace {
    pub fn randers_flat(n: usize, t: f64, measure: Measure) -> Result<Self> {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::param("t", format!("drift must satisfy 0 <= t < 1, got {t}")));
        }
        Self::checked(ModelKind::RandersFlat { n, t }, measure)
    }

    pub fn euclidean(n: usize, measure: Measure) -> Result<Self> {
        Self::checked(ModelKind::EuclideanFlat { n }, measure)
    }

    pub fn hyperbolic(n: usize, k: f64, measure: Measure) -> Result<Self> {
        if !(k < 0.0 && k.is_finite()) {
            return Err(Error::param("k", format!("hyperbolic curvature must be negative, got {k}")));
        }
        Self::checked(ModelKind::HyperbolicBall { n, k }, measure)
    }

    fn checked(kind: ModelKind, measure: Measure) -> Result<Self> {
        let n = match kind {
            ModelKind::RandersFlat { n, .. } | ModelKind::EuclideanFlat { n } | ModelKind::HyperbolicBall { n, .. } => n,
        };
        if n < 2 {
            return Err(Error::param("n", format!("dimension must be at least 2, got {n}")));
        }
        Ok(Self { kind, measure })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    pub fn with_measure(&self, measure: Measure) -> Self {
        Self {
            kind: self.kind,
            measure,
        }
    }

    pub fn dim(&self) -> usize {
        match self.kind {
            ModelKind::RandersFlat { n, .. } | ModelKind::EuclideanFlat { n } | ModelKind::HyperbolicBall { n, .. } => n,
        }
    }

    /// Signed drift (zero off the Randers model).
    pub fn drift(&self) -> f64 {
        match self.kind {
            ModelKind::RandersFlat { t, .. } => t,
            _ => 0.0,
        }
    }

    /// Flag curvature bound `k` (exact: the models have constant curvature).
    pub fn curvature(&self) -> f64 {
        match self.kind {
            ModelKind::HyperbolicBall { k, .. } => k,
            _ => 0.0,
        }
    }

    /// S-curvature bound parameter `h`; zero on every implemented model.
    pub fn s_curvature(&self) -> f64 {
        0.0
    }

    pub fn comparison(&self) -> ComparisonFns {
        ComparisonFns::new(self.curvature(), self.s_curvature())
    }

    pub fn minkowski(&self) -> MinkowskiNorm {
        let n = self.dim();
        MinkowskiNorm::signed(n, self.drift()).expect("validated model")
    }

    pub fn reversibility(&self) -> f64 {
        self.minkowski().reversibility()
    }

    pub fn uniformity(&self) -> f64 {
        self.minkowski().uniformity()
    }

    pub fn is_reversible(&self) -> bool {
        self.drift() == 0.0
    }

    /// The same manifold with the reverse metric `F̃(x,y) = F(x,−y)`.
    pub fn reverse(&self) -> Self {
        let kind = match self.kind {
            ModelKind::RandersFlat { n, t } => ModelKind::RandersFlat { n, t: -t },
            other => other,
        };
        Self {
            kind,
            measure: self.measure.clone(),
        }
    }

    /// Euclidean coordinate radius of the model domain.
    pub fn domain_radius(&self) -> f64 {
        match self.kind {
            ModelKind::HyperbolicBall { k, .. } => 1.0 / (-k).sqrt(),
            _ => f64::INFINITY,
        }
    }

    fn inside(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let r = euclid(x);
        if r >= self.domain_radius() {
            return Err(Error::OutsideDomain(format!(
                "|x| = {r} is outside the ball of radius {}",
                self.domain_radius()
            )));
        }
        Ok(r)
    }

    pub fn norm_at(&self, x: &[f64]) -> Result<LocalNorm> {
        let r = self.inside(x)?;
        let scale = match self.kind {
            ModelKind::HyperbolicBall { k, .. } => 2.0 / (1.0 + k * r * r),
            _ => 1.0,
        };
        Ok(LocalNorm {
            scale,
            base: self.minkowski(),
        })
    }

    /// Forward distance `ρ₊(x) = d(0, x)`.
    pub fn rho_plus(&self, x: &[f64]) -> Result<f64> {
        let r = self.inside(x)?;
        Ok(self.rho_from(r, x[x.len() - 1], 1.0))
    }

    /// Backward distance `ρ₋(x) = d(x, 0)`.
    pub fn rho_minus(&self, x: &[f64]) -> Result<f64> {
        let r = self.inside(x)?;
        Ok(self.rho_from(r, x[x.len() - 1], -1.0))
    }

    fn rho_from(&self, r: f64, xn: f64, sign: f64) -> f64 {
        match self.kind {
            ModelKind::RandersFlat { t, .. } => r + sign * t * xn,
            ModelKind::EuclideanFlat { .. } => r,
            ModelKind::HyperbolicBall { k, .. } => {
                let a = (-k).sqrt();
                2.0 / a * (a * r).atanh()
            }
        }
    }

    /// `ρ_u`: `ρ₋` where `u > 0`, `ρ₊` where `u < 0`, their mean on `{u = 0}`.
    pub fn rho_u(&self, sign: f64, x: &[f64]) -> Result<f64> {
        if sign > 0.0 {
            self.rho_minus(x)
        } else if sign < 0.0 {
            self.rho_plus(x)
        } else {
            Ok(0.5 * (self.rho_minus(x)? + self.rho_plus(x)?))
        }
    }

    pub fn rho(&self, orientation: Orientation, x: &[f64]) -> Result<f64> {
        match orientation {
            Orientation::MinusRadial => self.rho_minus(x),
            Orientation::PlusRadial => self.rho_plus(x),
        }
    }

    /// Density of the measure with respect to coordinate Lebesgue measure.
    pub fn density(&self, x: &[f64]) -> Result<f64> {
        let r = self.inside(x)?;
        let n = self.dim() as f64;
        let base = match (&self.kind, &self.measure) {
            (ModelKind::RandersFlat { t, .. }, Measure::HolmesThompson) => {
                let _ = t;
                1.0
            }
            (ModelKind::RandersFlat { t, .. }, _) => (1.0 - t * t).powf((n + 1.0) / 2.0),
            (ModelKind::EuclideanFlat { .. }, _) => 1.0,
            (ModelKind::HyperbolicBall { k, .. }, _) => (2.0 / (1.0 + k * r * r)).powf(n),
        };
        Ok(match &self.measure {
            Measure::Custom(c) => {
                let mid = 0.5 * (self.rho_plus(x)? + self.rho_minus(x)?);
                (c.weight)(mid) * base
            }
            _ => base,
        })
    }

    /// Point with polar coordinates `(ρ, ω)` about the origin.
    ///
    /// For `MinusRadial` the chart is backward (`ρ₋(x) = ρ`): on the Randers model
    /// `x = ρ (ω_α/√(1−t²), (ω_n + t)/(1−t²))`. `PlusRadial` uses `ρ₊` and `ω_n − t`.
    pub fn polar_point(&self, orientation: Orientation, rho: f64, omega: &[f64]) -> Vec<f64> {
        let n = self.dim();
        match self.kind {
            ModelKind::RandersFlat { t, .. } => {
                let t = match orientation {
                    Orientation::MinusRadial => t,
                    Orientation::PlusRadial => -t,
                };
                let c = 1.0 - t * t;
                let sq = c.sqrt();
                let mut x: Vec<f64> = omega.iter().map(|w| rho * w / sq).collect();
                x[n - 1] = rho * (omega[n - 1] + t) / c;
                x
            }
            ModelKind::EuclideanFlat { .. } => omega.iter().map(|w| rho * w).collect(),
            ModelKind::HyperbolicBall { k, .. } => {
                let a = (-k).sqrt();
                let r = (0.5 * a * rho).tanh() / a;
                omega.iter().map(|w| r * w).collect()
            }
        }
    }

    /// `dm/(dρ dν)` at the polar point `(ρ, ω)`.
    pub fn polar_weight(&self, orientation: Orientation, rho: f64, omega: &[f64]) -> Result<f64> {
        match &self.measure {
            Measure::Custom(c) => {
                let x = self.polar_point(orientation, rho, omega);
                let mid = 0.5 * (self.rho_plus(&x)? + self.rho_minus(&x)?);
                let bh = self.with_measure(Measure::BusemannHausdorff);
                let (rad, ang) = bh.polar_density(orientation, rho, omega)?;
                Ok((c.weight)(mid) * rad * ang)
            }
            _ => {
                let (rad, ang) = self.polar_density(orientation, rho, omega)?;
                Ok(rad * ang)
            }
        }
    }

    /// Polar density split as `(radial profile, angular factor)`.
    ///
    /// Randers model, backward chart: `dm_BH = (1 + t ω_n) ρ^{n−1} dρ dν` and
    /// `dm_HT = (1−t²)^{−(n+1)/2} dm_BH`. Hyperbolic: `s_k^{n−1}(ρ)` and factor 1.
    pub fn polar_density(&self, orientation: Orientation, rho: f64, omega: &[f64]) -> Result<(f64, f64)> {
        let n = self.dim();
        let radial = self.comparison().s_unchecked(rho).powi(n as i32 - 1);
        match (&self.kind, &self.measure) {
            (_, Measure::Custom(_)) => Err(Error::Precondition(
                "custom measures have no separable polar density".into(),
            )),
            (ModelKind::RandersFlat { t, .. }, m) => {
                let t = match orientation {
                    Orientation::MinusRadial => *t,
                    Orientation::PlusRadial => -*t,
                };
                let pref = match m {
                    Measure::HolmesThompson => (1.0 - t * t).powf(-((n + 1) as f64) / 2.0),
                    _ => 1.0,
                };
                Ok((pref * radial, 1.0 + t * omega[n - 1]))
            }
            _ => Ok((radial, 1.0)),
        }
    }

    /// `C_p(dm)`: the measure of the unit-speed polar chart, `dm = C_p s_k^{n−1} dρ`
    /// after integrating over directions.
    pub fn model_constant_cp(&self) -> Result<f64> {
        let n = self.dim();
        let area = sphere_area(n);
        match (&self.kind, &self.measure) {
            (_, Measure::Custom(_)) => Err(Error::Precondition(
                "C_p is only tabulated for the Busemann-Hausdorff and Holmes-Thompson measures".into(),
            )),
            (ModelKind::RandersFlat { t, .. }, Measure::HolmesThompson) => {
                Ok(area * (1.0 - t * t).powf(-((n + 1) as f64) / 2.0))
            }
            _ => Ok(area),
        }
    }

    /// Whether radial fields have closed-form Laplacians on this model and measure.
    pub fn has_radial_closed_form(&self) -> bool {
        !matches!(self.measure, Measure::Custom(_))
    }

    /// `L f = f'' + (n−1)(s_k'/s_k) f'`: the Laplacian of `f(ρ₋)` when `f' ≤ 0`.
    pub fn radial_operator(&self, f1: f64, f2: f64, rho: f64) -> f64 {
        let n = self.dim() as f64;
        f2 + (n - 1.0) * self.comparison().t_log_derivative(rho) / rho * f1
    }

    /// Closed-form Laplacian of `ρ₋^{−N}` (`MinusRadial`) or `−ρ₊^{−N}` (`PlusRadial`)
    /// at distance `rho`, computed through the reverse metric:
    /// `Δρ₋^{−N} = −N ρ̃^{−N−2}[(−N−1) + ρ̃ Δ̃ρ̃]` with `ρ̃ Δ̃ρ̃ = (n−1) ρ s_k'/s_k`.
    pub fn radial_laplacian(&self, exponent: f64, orientation: Orientation, rho: f64) -> Result<f64> {
        if !self.has_radial_closed_form() {
            return Err(Error::Precondition("no closed-form radial Laplacian for custom measures".into()));
        }
        if !(rho > 0.0) {
            return Err(Error::OutsideDomain(format!("radial Laplacian needs ρ > 0, got {rho}")));
        }
        let n = self.dim() as f64;
        let big_n = exponent;
        let lap_rho = (n - 1.0) * self.comparison().t_log_derivative(rho);
        let minus = -big_n * rho.powf(-big_n - 2.0) * ((-big_n - 1.0) + lap_rho);
        Ok(match orientation {
            Orientation::MinusRadial => minus,
            Orientation::PlusRadial => -minus,
        })
    }

    /// Chart `X` with `X^α = x^α`, `X^n = √(1−t²)(x^n − tρ₋/(1−t²))`, in which
    /// `|X|² = ρ₋²/(1−t²)` and backward rays are straight lines through 0.
    pub fn straightening_chart(&self, x: &[f64]) -> Result<Vec<f64>> {
        let t = self.drift();
        let rm = self.rho_minus(x)?;
        let n = self.dim();
        let mut out = x.to_vec();
        let c = 1.0 - t * t;
        out[n - 1] = c.sqrt() * (x[n - 1] - t * rm / c);
        Ok(out)
    }

    pub fn descriptor(&self) -> ModelDescriptor {
        let (kind, n, t, k) = match self.kind {
            ModelKind::RandersFlat { n, t } => ("randers", n, Some(t), None),
            ModelKind::EuclideanFlat { n } => ("euclidean", n, None, None),
            ModelKind::HyperbolicBall { n, k } => ("hyperbolic", n, None, Some(k)),
        };
        ModelDescriptor {
            kind: kind.to_string(),
            n,
            t,
            k,
            measure: self.measure.tag(),
        }
    }
}

/// Serializable description of a model, as used by run configurations and reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub measure: String,
}

impl TryFrom<&ModelDescriptor> for ModelSpace {
    type Error = Error;

    fn try_from(d: &ModelDescriptor) -> Result<Self> {
        let measure = match d.measure.as_str() {
            "bh" => Measure::BusemannHausdorff,
            "ht" => Measure::HolmesThompson,
            other => {
                return Err(Error::Config(format!(
                    "unknown measure `{other}` (expected bh or ht)"
                )))
            }
        };
        match d.kind.as_str() {
            "randers" => ModelSpace::randers_flat(d.n, d.t.unwrap_or(0.0), measure),
            "euclidean" => ModelSpace::euclidean(d.n, measure),
            "hyperbolic" => ModelSpace::hyperbolic(d.n, d.k.unwrap_or(-1.0), measure),
            other => Err(Error::Config(format!(
                "unknown model `{other}` (expected randers, euclidean or hyperbolic)"
            ))),
        }
    }
}

/// `½(ρ₊ + ρ₋)` on the Randers model equals `|x|`.
pub fn mean_distance(model: &ModelSpace, x: &[f64]) -> Result<f64> {
    Ok(0.5 * (model.rho_plus(x)? + model.rho_minus(x)?))
}

/// Euclidean inner product, re-exported for callers that mix charts.
pub fn coord_dot(a: &[f64], b: &[f64]) -> f64 {
    dot(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{radial_integrate, sphere_integrate, QuadratureSpec};
    use crate::sampling;
    use approx::assert_relative_eq;

    fn randers(n: usize, t: f64) -> ModelSpace {
        ModelSpace::randers_flat(n, t, Measure::BusemannHausdorff).unwrap()
    }

    #[test]
    fn distances() {
        let m = randers(3, 0.5);
        assert_eq!(m.rho_minus(&[0.0, 0.0, 1.0]).unwrap(), 0.5);
        assert_eq!(m.rho_plus(&[0.0, 0.0, 1.0]).unwrap(), 1.5);
        assert_eq!(m.rho_minus(&[1.0, 0.0, 0.0]).unwrap(), 1.0);
        assert_eq!(m.rho_plus(&[1.0, 0.0, 0.0]).unwrap(), 1.0);
        let e = randers(3, 0.0);
        assert_eq!(e.rho_minus(&[3.0, 0.0, 4.0]).unwrap(), 5.0);
        assert_eq!(e.rho_plus(&[3.0, 0.0, 4.0]).unwrap(), 5.0);
        assert!(randers(3, 1.0 - 1e-16).rho_plus(&[0.0, 0.0, 1.0]).is_ok());
        assert!(ModelSpace::randers_flat(3, 1.0, Measure::BusemannHausdorff).is_err());
    }

    #[test]
    fn rho_u_cases() {
        let m = randers(3, 0.5);
        let x = [0.3, -0.2, 0.7];
        assert_eq!(m.rho_u(1.0, &x).unwrap(), m.rho_minus(&x).unwrap());
        assert_eq!(m.rho_u(-2.0, &x).unwrap(), m.rho_plus(&x).unwrap());
        assert_relative_eq!(m.rho_u(0.0, &x).unwrap(), euclid(&x), max_relative = 1e-15);
        let h = ModelSpace::hyperbolic(3, -1.0, Measure::BusemannHausdorff).unwrap();
        let y = [0.1, 0.2, -0.3];
        assert_eq!(h.rho_u(1.0, &y).unwrap(), h.rho_u(-1.0, &y).unwrap());
        assert!(h.rho_minus(&[1.0, 0.0, 0.0]).is_err());
    }

    // ρ₋ is the forward distance of the reverse metric: length of the straight
    // segment from x to 0 measured with F equals the reverse-norm length from 0 to x.
    #[test]
    fn backward_distance_is_reverse_forward_distance() {
        let m = randers(4, 0.6);
        let f = m.minkowski();
        let mut r = sampling::rng(2, 0);
        for _ in 0..100 {
            let x = sampling::gaussian_vec(&mut r, 4);
            let to_origin: Vec<f64> = x.iter().map(|c| -c).collect();
            let len_f = f.norm_raw(&to_origin);
            let len_rev = f.reverse().norm_raw(&x);
            assert_relative_eq!(len_f, m.rho_minus(&x).unwrap(), max_relative = 1e-14);
            assert_relative_eq!(len_rev, m.rho_minus(&x).unwrap(), max_relative = 1e-14);
            assert_relative_eq!(m.reverse().rho_plus(&x).unwrap(), m.rho_minus(&x).unwrap(), max_relative = 1e-14);
        }
    }

    #[test]
    fn straightening_chart_identity() {
        let m = randers(5, 0.7);
        let mut r = sampling::rng(3, 0);
        for _ in 0..1000 {
            let x = sampling::gaussian_vec(&mut r, 5);
            let big = m.straightening_chart(&x).unwrap();
            let lhs = big.iter().map(|c| c * c).sum::<f64>();
            let rho = m.rho_minus(&x).unwrap();
            assert!((lhs - rho * rho / (1.0 - 0.49)).abs() <= 1e-12 * lhs.max(1.0));
        }
    }

    #[test]
    fn polar_chart_inverts_distance() {
        for orientation in [Orientation::MinusRadial, Orientation::PlusRadial] {
            let m = randers(3, 0.5);
            let mut r = sampling::rng(4, 0);
            for _ in 0..100 {
                let w = sampling::random_unit(&mut r, 3);
                let x = m.polar_point(orientation, 0.8, &w);
                assert_relative_eq!(m.rho(orientation, &x).unwrap(), 0.8, max_relative = 1e-14);
                // backward rays are radial lines, so x/|x| determines ω
            }
            let h = ModelSpace::hyperbolic(4, -2.0, Measure::BusemannHausdorff).unwrap();
            let x = h.polar_point(orientation, 1.3, &[0.0, 0.6, 0.0, 0.8]);
            assert_relative_eq!(h.rho(orientation, &x).unwrap(), 1.3, max_relative = 1e-14);
        }
    }

    // Jacobian oracle: finite-difference determinant of the polar map times the
    // coordinate density must reproduce the closed-form polar density.
    #[test]
    fn polar_density_matches_jacobian() {
        let cases = [
            randers(3, 0.5),
            ModelSpace::randers_flat(3, 0.5, Measure::HolmesThompson).unwrap(),
            randers(2, 0.3),
            ModelSpace::hyperbolic(3, -1.0, Measure::BusemannHausdorff).unwrap(),
        ];
        for m in &cases {
            for orientation in [Orientation::MinusRadial, Orientation::PlusRadial] {
                let n = m.dim();
                for &(rho, th) in &[(0.4, 0.3), (0.9, 2.0), (0.2, 1.2)] {
                    // parametrize ω by angle θ in the (x1, xn) plane (n = 2, 3)
                    let om = |th: f64, ph: f64| -> Vec<f64> {
                        if n == 2 {
                            vec![th.sin(), th.cos()]
                        } else {
                            vec![th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
                        }
                    };
                    let ph = 0.7;
                    let h = 1e-6;
                    let p = |r: f64, t: f64, f: f64| m.polar_point(orientation, r, &om(t, f));
                    let d = |a: Vec<f64>, b: Vec<f64>| -> Vec<f64> {
                        a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect()
                    };
                    let cols = vec![
                        d(p(rho + h, th, ph), p(rho - h, th, ph)),
                        d(p(rho, th + h, ph), p(rho, th - h, ph)),
                        d(p(rho, th, ph + h), p(rho, th, ph - h)),
                    ];
                    let (det, area_elem) = if n == 2 {
                        (cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0], 1.0)
                    } else {
                        let mtx = nalgebra::Matrix3::from_fn(|i, j| cols[j][i]);
                        (mtx.determinant(), th.sin())
                    };
                    let x = p(rho, th, ph);
                    let want = m.density(&x).unwrap() * det.abs() / area_elem;
                    let got = m.polar_weight(orientation, rho, &om(th, ph)).unwrap();
                    assert_relative_eq!(got, want, max_relative = 1e-7);
                }
            }
        }
    }

    #[test]
    fn angular_factor_averages_out() {
        let m = randers(3, 0.5);
        let avg = sphere_integrate(|w| m.polar_density(Orientation::MinusRadial, 1.0, w).unwrap().1 - 1.0, 3, 8);
        assert!(avg.abs() < 1e-13);
        let h = ModelSpace::hyperbolic(2, -1.0, Measure::BusemannHausdorff).unwrap();
        let (rad, ang) = h.polar_density(Orientation::MinusRadial, 1.0, &[1.0, 0.0]).unwrap();
        assert_relative_eq!(rad, 1.175_201_193_643_801_4, max_relative = 1e-15);
        assert_eq!(ang, 1.0);
    }

    // HT constant: integrate the coordinate density over the backward unit ball
    // in Euclidean polar coordinates, where ρ₋ = s(1 − tσ_n), and compare with C_p/n.
    #[test]
    fn holmes_thompson_constant_by_quadrature() {
        for n in [2usize, 3, 4] {
            let t = 0.5;
            let m = ModelSpace::randers_flat(n, t, Measure::HolmesThompson).unwrap();
            let vol = sphere_integrate(|s| (1.0 - t * s[n - 1]).powi(-(n as i32)) / n as f64, n, 24);
            let cp = m.model_constant_cp().unwrap();
            assert_relative_eq!(vol, cp / n as f64, max_relative = 1e-10);
            let bh = randers(n, t);
            assert_relative_eq!(bh.model_constant_cp().unwrap(), sphere_area(n), max_relative = 1e-15);
            assert_relative_eq!(
                bh.density(&[0.1; 4][..n]).unwrap() / m.density(&[0.1; 4][..n]).unwrap(),
                (1.0 - t * t).powf((n as f64 + 1.0) / 2.0),
                max_relative = 1e-15
            );
        }
        assert_relative_eq!(randers(3, 0.2).model_constant_cp().unwrap(), 4.0 * std::f64::consts::PI, max_relative = 1e-15);
        assert_relative_eq!(randers(2, 0.2).model_constant_cp().unwrap(), 2.0 * std::f64::consts::PI, max_relative = 1e-15);
    }

    #[test]
    fn hyperbolic_volume_growth() {
        // n = 2: area of geodesic disc = 2π(cosh R − 1); n = 3: π(sinh 2R − 2R)
        let spec = QuadratureSpec::default();
        let h2 = ModelSpace::hyperbolic(2, -1.0, Measure::BusemannHausdorff).unwrap();
        let c = h2.comparison();
        let v = radial_integrate(|r| c.s_unchecked(r), 0.0, 1.5, &spec).unwrap().value
            * h2.model_constant_cp().unwrap();
        assert_relative_eq!(v, 2.0 * std::f64::consts::PI * (1.5f64.cosh() - 1.0), max_relative = 1e-12);
        let v3 = radial_integrate(|r| c.s_unchecked(r).powi(2), 0.0, 1.5, &spec).unwrap().value * 4.0 * std::f64::consts::PI;
        assert_relative_eq!(v3, std::f64::consts::PI * (3.0f64.sinh() - 3.0), max_relative = 1e-12);
    }

    #[test]
    fn comparison_functions() {
        let flat = ComparisonFns::new(0.0, 0.0);
        for &t in &[1e-6, 0.3, 4.0] {
            assert_eq!(flat.d(t).unwrap(), 0.0);
        }
        let hyp = ComparisonFns::new(-1.0, 0.0);
        assert_relative_eq!(hyp.d(1.0).unwrap(), 0.313_035_285_499_331_3, max_relative = 1e-14);
        assert_relative_eq!(hyp.s(1.0).unwrap(), 1.0f64.sinh(), max_relative = 1e-15);
        // small-argument branch is continuous with the direct formula
        let x = 1e-3 * (1.0 + 1e-9);
        assert_relative_eq!(hyp.d(x).unwrap(), x / x.tanh() - 1.0, max_relative = 1e-8);
        assert!(hyp.d(1e-9).unwrap() > 0.0);
        assert!(hyp.d(1e-9).unwrap() < 1e-17);
        let with_h = ComparisonFns::new(-1.0, 0.5);
        assert!(with_h.d(0.8).unwrap() < hyp.d(0.8).unwrap());
        let sph = ComparisonFns::new(1.0, 0.0);
        assert!(sph.d(1.0).unwrap() < 0.0);
        assert!(sph.d(2.0).is_err());
        assert!(hyp.d(0.0).is_err());
        assert_relative_eq!(sph.s_prime(0.5).unwrap(), 0.5f64.cos(), max_relative = 1e-15);
    }

    #[test]
    fn radial_laplacian_closed_forms() {
        let m = randers(3, 0.5);
        assert!(m.radial_laplacian(1.0, Orientation::MinusRadial, 0.7).unwrap().abs() < 1e-15);
        let m5 = randers(5, 0.5);
        assert_relative_eq!(m5.radial_laplacian(1.0, Orientation::MinusRadial, 1.0).unwrap(), -2.0, max_relative = 1e-15);
        assert_relative_eq!(m5.radial_laplacian(1.0, Orientation::PlusRadial, 1.0).unwrap(), 2.0, max_relative = 1e-15);
        let m6 = randers(6, 0.5);
        // Δρ₋^{-N} = N(N+2−n)ρ^{-N-2}
        assert_relative_eq!(m6.radial_laplacian(2.0, Orientation::MinusRadial, 0.5).unwrap(), -2.0 * 2.0 * 0.5f64.powi(-4), max_relative = 1e-14);
        assert!(m.radial_laplacian(1.0, Orientation::MinusRadial, 0.0).is_err());
        // operator form agrees with the exponent form
        let h = ModelSpace::hyperbolic(4, -1.0, Measure::BusemannHausdorff).unwrap();
        let rho = 0.9f64;
        let nn = 2.0;
        let f1 = -nn * rho.powf(-nn - 1.0);
        let f2 = nn * (nn + 1.0) * rho.powf(-nn - 2.0);
        assert_relative_eq!(h.radial_operator(f1, f2, rho), h.radial_laplacian(nn, Orientation::MinusRadial, rho).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn descriptor_round_trip() {
        let m = ModelSpace::randers_flat(3, 0.5, Measure::HolmesThompson).unwrap();
        let d = m.descriptor();
        let back = ModelSpace::try_from(&d).unwrap();
        assert_eq!(back.kind(), m.kind());
        assert_eq!(back.measure().tag(), "ht");
        let bad = ModelDescriptor { kind: "torus".into(), n: 3, t: None, k: None, measure: "bh".into() };
        assert!(ModelSpace::try_from(&bad).is_err());
    }

    #[test]
    fn custom_measure_weights_bh() {
        let w = CustomDensity { name: "exp".into(), weight: Arc::new(|r: f64| (-r).exp()) };
        let m = randers(3, 0.4).with_measure(Measure::Custom(w));
        let x = [0.2, 0.1, -0.3];
        let bh = randers(3, 0.4).density(&x).unwrap();
        assert_relative_eq!(m.density(&x).unwrap(), (-euclid(&x)).exp() * bh, max_relative = 1e-15);
        assert!(m.model_constant_cp().is_err());
        assert!(!m.has_radial_closed_form());
    }
}
