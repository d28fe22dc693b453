//! Position-independent Minkowski norms: Euclidean and Randers `F(y) = |y| + b y_n`.
//!
//! Besides the norm itself this module provides the conjugate norm `F*`, the Legendre
//! pair, both fundamental tensors, the asymmetry constants and the slack of the refined
//! Cauchy-Schwarz inequality
//! `F*²(ξ+η) ≥ F*²(ξ) + 2 g*_ξ(ξ,η) + F*²(η)/Λ_F`.
//!
//! The drift is stored with a sign. Public constructors accept `0 ≤ b < 1` only, but
//! [`MinkowskiNorm::reverse`] produces drift `-b`, which is the same Randers family
//! reflected through `y_n ↦ -y_n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling;
use crate::vector::{dot, euclid, Covector, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum NormFamily {
    Euclidean,
    Randers { drift: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiNorm {
    n: usize,
    family: NormFamily,
}

/// Summary of a sampling estimate of an asymmetry constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampledConstant {
    pub estimate: f64,
    pub exact: f64,
    pub samples: usize,
}

impl SampledConstant {
    pub fn relative_error(&self) -> f64 {
        (self.estimate - self.exact).abs() / self.exact
    }
}

impl MinkowskiNorm {
    pub fn euclidean(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "dimension must be positive"));
        }
        Ok(Self {
            n,
            family: NormFamily::Euclidean,
        })
    }

    pub fn randers(n: usize, b: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&b) {
            return Err(Error::param("b", format!("drift must satisfy 0 <= b < 1, got {b}")));
        }
        Self::signed(n, b)
    }

    pub(crate) fn signed(n: usize, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::param("n", "dimension must be positive"));
        }
        if !(b.abs() < 1.0) {
            return Err(Error::param("b", format!("|b| must be < 1, got {b}")));
        }
        let family = if b == 0.0 {
            NormFamily::Euclidean
        } else {
            NormFamily::Randers { drift: b }
        };
        Ok(Self { n, family })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> NormFamily {
        self.family
    }

    /// Signed drift; zero for the Euclidean family.
    pub fn drift(&self) -> f64 {
        match self.family {
            NormFamily::Euclidean => 0.0,
            NormFamily::Randers { drift } => drift,
        }
    }

    pub fn is_reversible(&self) -> bool {
        self.drift() == 0.0
    }

    /// The reverse norm `F̃(y) = F(-y)`.
    pub fn reverse(&self) -> Self {
        Self::signed(self.n, -self.drift()).expect("reverse of a valid norm is valid")
    }

    fn check(&self, len: usize) {
        assert_eq!(len, self.n, "dimension mismatch");
    }

    pub fn norm(&self, y: &Vector) -> f64 {
        self.norm_raw(&y.0)
    }

    pub(crate) fn norm_raw(&self, y: &[f64]) -> f64 {
        self.check(y.len());
        euclid(y) + self.drift() * y[self.n - 1]
    }

    pub fn reverse_norm(&self, y: &Vector) -> f64 {
        self.norm(&-y)
    }

    /// `F*²`, without the square root when the norm is Euclidean.
    fn dual_sq(&self, xi: &[f64]) -> f64 {
        if self.drift() == 0.0 {
            dot(xi, xi)
        } else {
            self.dual_raw(xi).powi(2)
        }
    }

    pub(crate) fn dual_raw(&self, xi: &[f64]) -> f64 {
        self.check(xi.len());
        let b = self.drift();
        let m = euclid(xi);
        if b == 0.0 || m == 0.0 {
            return m;
        }
        let xn = xi[self.n - 1];
        let s = dual_s(b, m, xn);
        if b * xn > 0.0 {
            m * m / (s + b * xn)
        } else {
            (s - b * xn) / (1.0 - b * b)
        }
    }

    /// Conjugate norm `F*(ξ) = sup ⟨ξ,y⟩ / F(y)`.
    ///
    /// For Randers data, with `S = sqrt((1-b²)|ξ|² + b² ξ_n²)`,
    /// `F*(ξ) = (S - b ξ_n) / (1 - b²)`.
    pub fn dual_norm(&self, xi: &Covector) -> f64 {
        self.dual_raw(&xi.0)
    }

    /// `F*` obtained by maximizing `⟨ξ,y⟩/F(y)` over the unit sphere.
    ///
    /// Uses only [`MinkowskiNorm::norm`], so it applies to any norm family. A seeded
    /// sphere sample seeds a gradient ascent with golden-section line searches.
    pub fn dual_norm_numeric(&self, xi: &Covector) -> f64 {
        self.check(xi.dim());
        if xi.is_zero() {
            return 0.0;
        }
        let ratio = |y: &[f64]| dot(&xi.0, y) / self.norm_raw(y);
        let start = sampling::sphere_points(self.n, 4096.max(64 * self.n), 0x5eed)
            .into_iter()
            .map(|p| (ratio(&p), p))
            .fold((f64::NEG_INFINITY, vec![]), |a, b| if b.0 > a.0 { b } else { a });
        let (mut best, mut y) = start;
        for _ in 0..200 {
            let g = self.ratio_gradient(&xi.0, &y);
            let gn = euclid(&g);
            if gn < 1e-14 {
                break;
            }
            let dir: Vec<f64> = g.iter().map(|c| c / gn).collect();
            let along = |s: f64| {
                let p: Vec<f64> = y.iter().zip(&dir).map(|(a, d)| a + s * d).collect();
                let r = euclid(&p);
                p.iter().map(|c| c / r).collect::<Vec<f64>>()
            };
            let s = golden_max(|s| ratio(&along(s)), 0.0, 0.5, 80);
            let cand = along(s);
            let val = ratio(&cand);
            if val <= best {
                break;
            }
            let gain = val - best;
            best = val;
            y = cand;
            if gain < 1e-16 * best.abs() {
                break;
            }
        }
        best
    }

    fn ratio_gradient(&self, xi: &[f64], y: &[f64]) -> Vec<f64> {
        let f = self.norm_raw(y);
        let p = dot(xi, y);
        let h = 1e-7;
        (0..self.n)
            .map(|i| {
                let mut a = y.to_vec();
                let mut b = y.to_vec();
                a[i] += h;
                b[i] -= h;
                let df = (self.norm_raw(&a) - self.norm_raw(&b)) / (2.0 * h);
                xi[i] / f - p * df / (f * f)
            })
            .collect()
    }

    /// Gradient of `F*` at `ξ ≠ 0`.
    pub(crate) fn dual_gradient(&self, xi: &[f64]) -> Vec<f64> {
        let b = self.drift();
        let m = euclid(xi);
        if b == 0.0 {
            return xi.iter().map(|c| c / m).collect();
        }
        let n = self.n;
        let xn = xi[n - 1];
        let s = dual_s(b, m, xn);
        let mut g: Vec<f64> = xi.iter().map(|c| c / s).collect();
        g[n - 1] = (xn / s - b) / (1.0 - b * b);
        g
    }

    /// Legendre map `L(y) = g_y(y, ·) = F(y) ∇F(y)`; `L(0) = 0`.
    pub fn legendre(&self, y: &Vector) -> Covector {
        self.check(y.dim());
        let m = y.euclidean();
        if m == 0.0 {
            return Covector::zeros(self.n);
        }
        let f = self.norm(y);
        let mut c: Vec<f64> = y.0.iter().map(|v| f * v / m).collect();
        c[self.n - 1] += f * self.drift();
        Covector(c)
    }

    /// Inverse Legendre map `L⁻¹(ξ) = F*(ξ) ∇F*(ξ)`; `L⁻¹(0) = 0`.
    pub fn legendre_inv(&self, xi: &Covector) -> Vector {
        Vector(self.legendre_inv_raw(&xi.0))
    }

    pub(crate) fn legendre_inv_raw(&self, xi: &[f64]) -> Vec<f64> {
        self.check(xi.len());
        let top = xi.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if top == 0.0 {
            return vec![0.0; self.n];
        }
        // Positively 1-homogeneous; normalizing avoids underflow in |ξ|².
        let unit: Vec<f64> = xi.iter().map(|c| c / top).collect();
        let fs = self.dual_raw(&unit);
        self.dual_gradient(&unit).into_iter().map(|g| top * fs * g).collect()
    }

    /// Fundamental tensor `g_y(u,v) = ½ ∂²F²/∂y^i∂y^j u^i v^j` (closed form).
    pub fn fundamental_form(&self, y: &Vector, u: &Vector, v: &Vector) -> Result<f64> {
        self.check(y.dim());
        let m = y.euclidean();
        if m == 0.0 {
            return Err(Error::ZeroVector {
                what: "fundamental tensor",
            });
        }
        let n = self.n;
        let b = self.drift();
        let f = self.norm(y);
        let yh: Vec<f64> = y.0.iter().map(|c| c / m).collect();
        let lu = dot(&yh, &u.0) + b * u[n - 1];
        let lv = dot(&yh, &v.0) + b * v[n - 1];
        let proj = dot(&u.0, &v.0) - dot(&yh, &u.0) * dot(&yh, &v.0);
        Ok(lu * lv + f / m * proj)
    }

    /// Fundamental tensor by fourth-order finite differences of `F²/2`.
    pub fn fundamental_form_fd(&self, y: &Vector, u: &Vector, v: &Vector) -> Result<f64> {
        if y.is_zero() {
            return Err(Error::ZeroVector {
                what: "fundamental tensor",
            });
        }
        let h = 1e-3 * y.euclidean().max(1.0) / (euclid(&u.0) + euclid(&v.0)).max(1e-300);
        Ok(hessian_form(
            |p| 0.5 * self.norm_raw(p).powi(2),
            &y.0,
            &u.0,
            &v.0,
            h,
        ))
    }

    /// Dual fundamental tensor `g*_ξ(η,ζ) = ½ ∂²F*²/∂ξ_i∂ξ_j η_i ζ_j` (closed form).
    pub fn dual_fundamental_form(&self, xi: &Covector, eta: &Covector, zeta: &Covector) -> Result<f64> {
        self.check(xi.dim());
        let m = xi.euclidean();
        if m == 0.0 {
            return Err(Error::ZeroVector {
                what: "dual fundamental tensor",
            });
        }
        let b = self.drift();
        let grad = self.dual_gradient(&xi.0);
        let fs = self.dual_raw(&xi.0);
        let first = dot(&grad, &eta.0) * dot(&grad, &zeta.0);
        if b == 0.0 {
            let proj = dot(&eta.0, &zeta.0) - dot(&xi.0, &eta.0) * dot(&xi.0, &zeta.0) / (m * m);
            return Ok(first + proj);
        }
        let n = self.n;
        let c = 1.0 - b * b;
        let s = dual_s(b, m, xi[n - 1]);
        let bmul = |w: &[f64]| {
            let mut r: Vec<f64> = w.iter().map(|x| c * x).collect();
            r[n - 1] += b * b * w[n - 1];
            r
        };
        let bxi = bmul(&xi.0);
        let beta_zeta = dot(&eta.0, &bmul(&zeta.0));
        let hess = (beta_zeta - dot(&bxi, &eta.0) * dot(&bxi, &zeta.0) / (s * s)) / (s * c);
        Ok(first + fs * hess)
    }

    /// Dual tensor by fourth-order finite differences of `F*²/2`.
    pub fn dual_fundamental_form_fd(&self, xi: &Covector, eta: &Covector, zeta: &Covector) -> Result<f64> {
        if xi.is_zero() {
            return Err(Error::ZeroVector {
                what: "dual fundamental tensor",
            });
        }
        let h = 1e-3 * xi.euclidean().max(1.0) / (euclid(&eta.0) + euclid(&zeta.0)).max(1e-300);
        Ok(hessian_form(
            |p| 0.5 * self.dual_raw(p).powi(2),
            &xi.0,
            &eta.0,
            &zeta.0,
            h,
        ))
    }

    /// `g*_ξ(ξ,η) = ⟨η, L⁻¹(ξ)⟩`, with the value 0 at `ξ = 0`.
    pub fn dual_pairing(&self, xi: &Covector, eta: &Covector) -> f64 {
        dot(&eta.0, &self.legendre_inv_raw(&xi.0))
    }

    /// Reversibility `λ_F = sup F(-y)/F(y)`.
    pub fn reversibility(&self) -> f64 {
        let b = self.drift().abs();
        (1.0 + b) / (1.0 - b)
    }

    /// Uniformity `Λ_F = sup g_X(Y,Y)/g_Z(Y,Y)`.
    pub fn uniformity(&self) -> f64 {
        self.reversibility().powi(2)
    }

    /// Estimate `λ_F` as the largest `F(-y)/F(y)` over a seeded sphere sample.
    pub fn sample_reversibility(&self, count: usize, seed: u64) -> SampledConstant {
        let pts = sampling::sphere_points(self.n, count, seed);
        let est = pts
            .par_iter()
            .map(|y| {
                let m: Vec<f64> = y.iter().map(|c| -c).collect();
                self.norm_raw(&m) / self.norm_raw(y)
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        SampledConstant {
            estimate: est,
            exact: self.reversibility(),
            samples: count,
        }
    }

    /// Estimate `Λ_F` on a sphere sample: for each `Y`, the ratio of the largest to
    /// the smallest `g_X(Y,Y)` as `X` ranges over the same sample.
    pub fn sample_uniformity(&self, count: usize, seed: u64) -> SampledConstant {
        let pts: Vec<Vector> = sampling::sphere_points(self.n, count, seed)
            .into_iter()
            .map(Vector)
            .collect();
        let est = pts
            .par_iter()
            .map(|y| {
                let (lo, hi) = pts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), x| {
                    let g = self.fundamental_form(x, y, y).expect("unit vector");
                    (lo.min(g), hi.max(g))
                });
                hi / lo
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        SampledConstant {
            estimate: est,
            exact: self.uniformity(),
            samples: count,
        }
    }

    /// Same estimator for the dual tensor; the result approximates `Λ_{F*} = Λ_F`.
    pub fn sample_dual_uniformity(&self, count: usize, seed: u64) -> SampledConstant {
        let pts: Vec<Covector> = sampling::sphere_points(self.n, count, seed)
            .into_iter()
            .map(Covector)
            .collect();
        let est = pts
            .par_iter()
            .map(|z| {
                let (lo, hi) = pts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), x| {
                    let g = self.dual_fundamental_form(x, z, z).expect("unit covector");
                    (lo.min(g), hi.max(g))
                });
                hi / lo
            })
            .reduce(|| f64::NEG_INFINITY, f64::max);
        SampledConstant {
            estimate: est,
            exact: self.uniformity(),
            samples: count,
        }
    }

    /// `F*²(ξ+η) − F*²(ξ) − 2g*_ξ(ξ,η) − F*²(η)/Λ_F`.
    pub fn refined_cs_slack(&self, xi: &Covector, eta: &Covector) -> f64 {
        let sum = self.dual_sq(&(xi + eta).0);
        sum - self.dual_sq(&xi.0) - 2.0 * self.dual_pairing(xi, eta) - self.dual_sq(&eta.0) / self.uniformity()
    }

    /// Slack of the classical Cauchy inequality `F*²(η) ≥ F*²(ξ) + 2g*_ξ(ξ,η−ξ)`.
    pub fn cauchy_slack(&self, xi: &Covector, eta: &Covector) -> f64 {
        self.dual_raw(&eta.0).powi(2)
            - self.dual_raw(&xi.0).powi(2)
            - 2.0 * self.dual_pairing(xi, &(eta - xi))
    }
}

fn dual_s(b: f64, m: f64, xn: f64) -> f64 {
    ((1.0 - b * b) * m * m + b * b * xn * xn).sqrt()
}

/// Mixed second derivative `∂_u ∂_v f` by polarization of fourth-order second
/// directional differences.
pub(crate) fn hessian_form(f: impl Fn(&[f64]) -> f64, at: &[f64], u: &[f64], v: &[f64], h: f64) -> f64 {
    let second = |w: &[f64]| {
        let p = |s: f64| -> f64 {
            let q: Vec<f64> = at.iter().zip(w).map(|(a, d)| a + s * d).collect();
            f(&q)
        };
        (-p(2.0 * h) + 16.0 * p(h) - 30.0 * p(0.0) + 16.0 * p(-h) - p(-2.0 * h)) / (12.0 * h * h)
    };
    let plus: Vec<f64> = u.iter().zip(v).map(|(a, b)| a + b).collect();
    let minus: Vec<f64> = u.iter().zip(v).map(|(a, b)| a - b).collect();
    (second(&plus) - second(&minus)) / 4.0
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    fn v(c: &[f64]) -> Vector {
        Vector(c.to_vec())
    }
    fn cv(c: &[f64]) -> Covector {
        Covector(c.to_vec())
    }

    #[test]
    fn norm_values() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        assert_eq!(f.norm(&v(&[0.0, 0.0, 1.0])), 1.5);
        assert_eq!(f.norm(&v(&[0.0, 0.0, -1.0])), 0.5);
        assert_eq!(f.norm(&Vector::zeros(3)), 0.0);
        let e = MinkowskiNorm::randers(4, 0.0).unwrap();
        assert_eq!(e.norm(&v(&[1.0, 0.0, 0.0, 0.0])), 1.0);
    }

    #[test]
    fn reverse_norm_values() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        assert_eq!(f.reverse_norm(&v(&[0.0, 0.0, 1.0])), 0.5);
        let g = MinkowskiNorm::randers(2, 0.3).unwrap();
        assert_relative_eq!(g.reverse_norm(&v(&[0.0, 1.0])), 0.7, epsilon = 1e-15);
        let e = MinkowskiNorm::euclidean(3).unwrap();
        let y = v(&[0.3, -1.2, 2.0]);
        assert_eq!(e.reverse_norm(&y), e.norm(&y));
        assert_eq!(f.reverse().norm(&y), f.reverse_norm(&y));
    }

    #[test]
    fn rejects_bad_drift() {
        assert!(MinkowskiNorm::randers(3, 1.0).is_err());
        assert!(MinkowskiNorm::randers(3, -0.1).is_err());
        assert!(MinkowskiNorm::randers(0, 0.1).is_err());
    }

    // Values below were obtained by maximizing <ξ,y>/F(y) numerically and then frozen.
    #[test]
    fn dual_norm_matches_variational_oracle() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let xi = cv(&[0.0, 0.0, 1.0]);
        assert_relative_eq!(f.dual_norm_numeric(&xi), 2.0 / 3.0, max_relative = 1e-10);
        assert_relative_eq!(f.dual_norm(&xi), 2.0 / 3.0, max_relative = 1e-14);

        let g = MinkowskiNorm::randers(2, 0.7).unwrap();
        let xi = cv(&[1.0, 0.0]);
        assert_relative_eq!(g.dual_norm_numeric(&xi), 1.400_280_084_028_010, max_relative = 1e-10);
        assert_relative_eq!(g.dual_norm(&xi), 1.0 / 0.51f64.sqrt(), max_relative = 1e-14);

        let e = MinkowskiNorm::euclidean(3).unwrap();
        assert_relative_eq!(e.dual_norm(&cv(&[0.6, 0.0, 0.8])), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn dual_norm_closed_form_agrees_with_search() {
        let mut r = sampling::rng(3, 0);
        for &b in &[0.0, 0.3, 0.7, 0.9] {
            for n in [2usize, 3, 5] {
                let f = MinkowskiNorm::randers(n, b).unwrap();
                for _ in 0..5 {
                    let xi = cv(&sampling::gaussian_vec(&mut r, n));
                    let a = f.dual_norm(&xi);
                    let s = f.dual_norm_numeric(&xi);
                    assert_relative_eq!(a, s, max_relative = 1e-9);
                }
            }
        }
    }

    #[test]
    fn legendre_round_trip_and_identities() {
        let mut r = sampling::rng(11, 0);
        for &b in &[0.0, 0.3, 0.5, 0.7] {
            let f = MinkowskiNorm::randers(3, b).unwrap();
            for _ in 0..10_000 {
                let scale = 10f64.powf(r.gen_range(-2.0..2.0));
                let y = v(&sampling::gaussian_vec(&mut r, 3)).scale(scale);
                let xi = f.legendre(&y);
                let back = f.legendre_inv(&xi);
                for i in 0..3 {
                    assert!((back[i] - y[i]).abs() <= 1e-10 * y.euclidean());
                }
                assert_relative_eq!(f.dual_norm(&xi), f.norm(&y), max_relative = 1e-12);
                // <L(y), y> = F²(y)
                assert_relative_eq!(xi.pair(&y), f.norm(&y).powi(2), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn legendre_inverse_identities() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let xi = cv(&[0.0, 0.0, 1.0]);
        let y = f.legendre_inv(&xi);
        assert_relative_eq!(f.norm(&y), f.dual_norm(&xi), max_relative = 1e-14);
        assert_relative_eq!(xi.pair(&y), f.dual_norm(&xi).powi(2), max_relative = 1e-14);
        assert!(f.legendre_inv(&Covector::zeros(3)).is_zero());
        assert!(f.legendre(&Vector::zeros(3)).is_zero());
        let e = MinkowskiNorm::euclidean(3).unwrap();
        assert_eq!(e.legendre(&v(&[1.0, 2.0, 3.0])).0, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn legendre_is_positively_homogeneous() {
        let f = MinkowskiNorm::randers(4, 0.6).unwrap();
        let y = v(&[0.2, -0.4, 1.0, -0.7]);
        let a = f.legendre(&y.scale(3.5));
        let b = f.legendre(&y).scale(3.5);
        for i in 0..4 {
            assert_relative_eq!(a[i], b[i], max_relative = 1e-14);
        }
    }

    #[test]
    fn fundamental_form_against_finite_differences() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let y = v(&[0.0, 0.0, 1.0]);
        let u = v(&[1.0, 0.0, 0.0]);
        let closed = f.fundamental_form(&y, &u, &u).unwrap();
        let fd = f.fundamental_form_fd(&y, &u, &u).unwrap();
        assert!((closed - fd).abs() < 1e-7);
        assert_relative_eq!(closed, 1.5, max_relative = 1e-14);

        let mut r = sampling::rng(5, 1);
        for _ in 0..200 {
            let y = v(&sampling::gaussian_vec(&mut r, 4));
            let a = v(&sampling::gaussian_vec(&mut r, 4));
            let b = v(&sampling::gaussian_vec(&mut r, 4));
            let g = MinkowskiNorm::randers(4, 0.7).unwrap();
            let c = g.fundamental_form(&y, &a, &b).unwrap();
            let d = g.fundamental_form_fd(&y, &a, &b).unwrap();
            assert!((c - d).abs() < 1e-7 * (1.0 + c.abs()), "{c} vs {d}");
            assert_relative_eq!(g.fundamental_form(&y, &y, &y).unwrap(), g.norm(&y).powi(2), max_relative = 1e-12);
        }
    }

    #[test]
    fn fundamental_form_euclidean_and_zero() {
        let e = MinkowskiNorm::euclidean(3).unwrap();
        let g = e
            .fundamental_form(&v(&[0.1, 5.0, -2.0]), &v(&[1.0, 2.0, 3.0]), &v(&[-1.0, 0.5, 2.0]))
            .unwrap();
        assert_relative_eq!(g, 6.0, max_relative = 1e-14);
        assert!(e.fundamental_form(&Vector::zeros(3), &v(&[1.0, 0.0, 0.0]), &v(&[1.0, 0.0, 0.0])).is_err());
    }

    // Frozen from fourth-order finite differences of F*²/2.
    #[test]
    fn dual_form_values() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let xi = cv(&[1.0, 0.0, 0.0]);
        let eta = cv(&[0.0, 0.0, 1.0]);
        let closed = f.dual_fundamental_form(&xi, &xi, &eta).unwrap();
        let fd = f.dual_fundamental_form_fd(&xi, &xi, &eta).unwrap();
        assert!((closed - fd).abs() < 1e-7);
        assert_relative_eq!(closed, -0.769_800_358_919_501_2, max_relative = 1e-12);
        assert_relative_eq!(closed, f.dual_pairing(&xi, &eta), max_relative = 1e-14);
        assert!(f.dual_fundamental_form(&Covector::zeros(3), &eta, &eta).is_err());
    }

    #[test]
    fn dual_form_against_finite_differences() {
        let mut r = sampling::rng(6, 2);
        for &b in &[0.0, 0.4, 0.8] {
            let f = MinkowskiNorm::randers(5, b).unwrap();
            for _ in 0..200 {
                let xi = cv(&sampling::gaussian_vec(&mut r, 5));
                let a = cv(&sampling::gaussian_vec(&mut r, 5));
                let c = cv(&sampling::gaussian_vec(&mut r, 5));
                let closed = f.dual_fundamental_form(&xi, &a, &c).unwrap();
                let fd = f.dual_fundamental_form_fd(&xi, &a, &c).unwrap();
                assert!((closed - fd).abs() < 1e-6 * (1.0 + closed.abs()), "{closed} vs {fd}");
                assert_relative_eq!(
                    f.dual_fundamental_form(&xi, &xi, &xi).unwrap(),
                    f.dual_norm(&xi).powi(2),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn dual_tensor_inverts_primal_tensor() {
        // g*_{L(y)} is the inverse matrix of g_y
        let f = MinkowskiNorm::randers(3, 0.6).unwrap();
        let y = v(&[0.3, -0.5, 0.8]);
        let xi = f.legendre(&y);
        let g = nalgebra::Matrix3::from_fn(|i, j| {
            f.fundamental_form(&y, &Vector::basis(3, i), &Vector::basis(3, j)).unwrap()
        });
        let gs = nalgebra::Matrix3::from_fn(|i, j| {
            f.dual_fundamental_form(&xi, &Covector::basis(3, i), &Covector::basis(3, j))
                .unwrap()
        });
        let id = g * gs;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn asymmetry_constants() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        assert_eq!(f.reversibility(), 3.0);
        assert_eq!(f.uniformity(), 9.0);
        let e = MinkowskiNorm::euclidean(3).unwrap();
        assert_eq!(e.reversibility(), 1.0);
        assert_eq!(e.uniformity(), 1.0);
        let s = f.sample_reversibility(1_000_000, 1);
        assert!(s.relative_error() < 1e-2, "{s:?}");
        assert!(s.estimate <= s.exact * (1.0 + 1e-12));
    }

    #[test]
    fn sampled_uniformity_approaches_from_below() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let coarse = f.sample_uniformity(200, 4);
        let fine = f.sample_uniformity(2000, 4);
        assert!(coarse.estimate <= f.uniformity() * (1.0 + 1e-12));
        assert!(fine.estimate <= f.uniformity() * (1.0 + 1e-12));
        assert!(fine.estimate >= coarse.estimate * 0.999);
        assert!(fine.relative_error() < 1e-2);
        let d = f.sample_dual_uniformity(1500, 4);
        assert!(d.estimate <= f.uniformity() * 1.01);
        assert!(d.relative_error() < 2e-2, "{d:?}");
        for &b in &[0.0, 0.3, 0.7] {
            let g = MinkowskiNorm::randers(4, b).unwrap();
            assert!(g.reversibility().powi(2) <= g.uniformity() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn refined_cs_special_cases() {
        let f = MinkowskiNorm::randers(3, 0.5).unwrap();
        let eta = cv(&[0.2, -1.0, 0.7]);
        let s = f.refined_cs_slack(&Covector::zeros(3), &eta);
        assert_relative_eq!(s, f.dual_norm(&eta).powi(2) * (1.0 - 1.0 / 9.0), max_relative = 1e-14);

        let e = MinkowskiNorm::euclidean(4).unwrap();
        let xi = cv(&[1.0, 2.0, -0.5, 0.3]);
        let eta = cv(&[-0.7, 0.1, 2.0, 1.1]);
        assert!(e.refined_cs_slack(&xi, &eta).abs() < 1e-13);
    }

    // η = −kξ: slack = F*²(ξ)(2k−1) + F*²(−ξ)((k−1)² − k²/Λ) for k ≥ 1.
    #[test]
    fn refined_cs_case_two_colinear_opposite() {
        let f = MinkowskiNorm::randers(2, 0.5).unwrap();
        let xi = cv(&[1.0, 0.0]);
        let eta = cv(&[-2.0, 0.0]);
        let k = 2.0;
        let fp = f.dual_norm(&xi).powi(2);
        let fm = f.dual_norm(&-&xi).powi(2);
        let oracle = fp * (2.0 * k - 1.0) + fm * ((k - 1.0f64).powi(2) - k * k / f.uniformity());
        assert_relative_eq!(f.refined_cs_slack(&xi, &eta), oracle, max_relative = 1e-13);
        assert_relative_eq!(oracle, 128.0 / 27.0, max_relative = 1e-14);
    }

    #[test]
    fn refined_cs_colinear_positive() {
        let f = MinkowskiNorm::randers(3, 0.7).unwrap();
        let xi = cv(&[0.3, 0.1, -0.9]);
        for &s in &[0.1, 1.0, 3.0] {
            let want = s * s * f.dual_norm(&xi).powi(2) * (1.0 - 1.0 / f.uniformity());
            assert!((f.refined_cs_slack(&xi, &xi.scale(s)) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn cauchy_inequality_holds() {
        let mut r = sampling::rng(8, 3);
        let f = MinkowskiNorm::randers(3, 0.8).unwrap();
        for _ in 0..10_000 {
            let xi = cv(&sampling::gaussian_vec(&mut r, 3));
            let eta = cv(&sampling::gaussian_vec(&mut r, 3));
            let s = f.cauchy_slack(&xi, &eta);
            assert!(s >= -1e-10 * f.dual_norm(&eta).powi(2).max(1.0));
        }
    }
}
