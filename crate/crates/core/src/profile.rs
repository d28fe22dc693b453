//! Radial profiles `f(ρ)` with two exact derivatives, used to build test functions
//! `u = f(ρ₋)` and `v = −f(ρ₊)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smooth cut-off: `ψ ≡ 1` on `[0, r]`, `ψ ≡ 0` on `[R, ∞)`, nonincreasing.
///
/// The transition is `φ(s) = E(1−s)/(E(s)+E(1−s))`, `E(s) = exp(−1/s)`, on
/// `s = (ρ−r)/(R−r)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cutoff {
    pub r: f64,
    pub big_r: f64,
}

impl Cutoff {
    pub fn new(r: f64, big_r: f64) -> Result<Self> {
        if !(r > 0.0 && big_r > r && big_r.is_finite()) {
            return Err(Error::param("cutoff", format!("need 0 < r < R, got r={r}, R={big_r}")));
        }
        Ok(Self { r, big_r })
    }

    /// `(ψ, ψ', ψ'')` at `rho`.
    pub fn eval(&self, rho: f64) -> [f64; 3] {
        if rho <= self.r {
            return [1.0, 0.0, 0.0];
        }
        if rho >= self.big_r {
            return [0.0, 0.0, 0.0];
        }
        let w = self.big_r - self.r;
        let [p, p1, p2] = transition((rho - self.r) / w);
        [p, p1 / w, p2 / (w * w)]
    }
}

/// `(E, E', E'')` for `E(s) = exp(−1/s)`, zero for `s ≤ 0`.
fn e_fn(s: f64) -> [f64; 3] {
    if s <= 0.0 {
        return [0.0; 3];
    }
    let e = (-1.0 / s).exp();
    let s2 = s * s;
    [e, e / s2, e * (1.0 - 2.0 * s) / (s2 * s2)]
}

fn transition(s: f64) -> [f64; 3] {
    let [a, a1, a2] = {
        let [e, e1, e2] = e_fn(1.0 - s);
        [e, -e1, e2]
    };
    let [b, b1, b2] = e_fn(s);
    let d = a + b;
    let d1 = a1 + b1;
    let d2 = a2 + b2;
    let q = a / d;
    let q1 = (a1 * d - a * d1) / (d * d);
    let q2 = (a2 * d - a * d2) / (d * d) - 2.0 * d1 * q1 / d;
    [q, q1, q2]
}

/// The factor multiplying the cut-off.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Base {
    One,
    /// `max(ε, ρ)^{−γ}`.
    Truncated { gamma: f64, eps: f64 },
    /// `exp(−aρ²)`.
    Gaussian { a: f64 },
    /// `(1 + ρ²/c²)^{−m}`.
    Algebraic { c: f64, m: f64 },
    /// `exp(−(ρ−c)²/w²)`: rises on `[0, c]`, so not monotone when `c > 0`.
    Ring { center: f64, width: f64 },
    /// `exp(4 − 1/s − 1/(1−s))` with `s = (ρ−a)/(b−a)`: a smooth bump supported in
    /// `[a, b]`, vanishing near the origin.
    Shell { inner: f64, outer: f64 },
}

impl Base {
    fn eval(&self, rho: f64) -> [f64; 3] {
        match *self {
            Base::One => [1.0, 0.0, 0.0],
            Base::Truncated { gamma, eps } => {
                if rho < eps {
                    [eps.powf(-gamma), 0.0, 0.0]
                } else {
                    let g = rho.powf(-gamma);
                    [g, -gamma * g / rho, gamma * (gamma + 1.0) * g / (rho * rho)]
                }
            }
            Base::Gaussian { a } => {
                let g = (-a * rho * rho).exp();
                [g, -2.0 * a * rho * g, (4.0 * a * a * rho * rho - 2.0 * a) * g]
            }
            Base::Algebraic { c, m } => {
                let c2 = c * c;
                let q = 1.0 + rho * rho / c2;
                let g = q.powf(-m);
                let g1 = -2.0 * m * rho / c2 * g / q;
                let g2 = -2.0 * m / c2 * (g / q - 2.0 * (m + 1.0) * rho * rho / c2 * g / (q * q));
                [g, g1, g2]
            }
            Base::Ring { center, width } => {
                let w2 = width * width;
                let d = rho - center;
                let g = (-d * d / w2).exp();
                [g, -2.0 * d / w2 * g, (4.0 * d * d / (w2 * w2) - 2.0 / w2) * g]
            }
            Base::Shell { inner, outer } => {
                if rho <= inner || rho >= outer {
                    return [0.0; 3];
                }
                let w = outer - inner;
                let s = (rho - inner) / w;
                let c = 1.0 - s;
                let q = 4.0 - 1.0 / s - 1.0 / c;
                let q1 = 1.0 / (s * s) - 1.0 / (c * c);
                let q2 = -2.0 / (s * s * s) - 2.0 / (c * c * c);
                let g = q.exp();
                if g == 0.0 {
                    return [0.0; 3];
                }
                [g, q1 * g / w, (q2 + q1 * q1) * g / (w * w)]
            }
        }
    }
}

/// `f(ρ) = scale · base(ρ) · ψ(ρ)` with `scale > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub base: Base,
    pub cutoff: Cutoff,
    pub scale: f64,
}

impl RadialProfile {
    pub fn new(base: Base, cutoff: Cutoff) -> Result<Self> {
        match base {
            Base::Truncated { gamma, eps } => {
                if !(eps > 0.0 && eps < cutoff.r) {
                    return Err(Error::param("eps", format!("need 0 < ε < r, got ε={eps}, r={}", cutoff.r)));
                }
                if !gamma.is_finite() {
                    return Err(Error::param("gamma", "must be finite"));
                }
            }
            Base::Gaussian { a } if !(a > 0.0) => return Err(Error::param("a", "must be positive")),
            Base::Algebraic { c, m } if !(c > 0.0 && m > 0.0) => {
                return Err(Error::param("algebraic", "need c > 0 and m > 0"))
            }
            Base::Ring { width, .. } if !(width > 0.0) => return Err(Error::param("width", "must be positive")),
            Base::Shell { inner, outer } if !(inner > 0.0 && outer > inner) => {
                return Err(Error::param("shell", "need 0 < inner < outer"))
            }
            _ => {}
        }
        Ok(Self { base, cutoff, scale: 1.0 })
    }

    /// The truncated family `ψ·max(ε,ρ)^{−γ}` of the sharpness sweeps.
    pub fn truncated(gamma: f64, eps: f64, r: f64, big_r: f64) -> Result<Self> {
        Self::new(Base::Truncated { gamma, eps }, Cutoff::new(r, big_r)?)
    }

    pub fn scaled(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::param("scale", "radial profiles take positive scale factors"));
        }
        self.scale *= c;
        Ok(self)
    }

    /// `(f, f', f'')`; at a kink the right-hand derivative is returned.
    pub fn eval(&self, rho: f64) -> [f64; 3] {
        let [g, g1, g2] = self.base.eval(rho);
        let [p, p1, p2] = self.cutoff.eval(rho);
        let s = self.scale;
        [s * g * p, s * (g1 * p + g * p1), s * (g2 * p + 2.0 * g1 * p1 + g * p2)]
    }

    pub fn support(&self) -> f64 {
        match self.base {
            Base::Shell { outer, .. } => outer.min(self.cutoff.big_r),
            _ => self.cutoff.big_r,
        }
    }

    /// Radii where `f` is not `C²`, or where the cut-off switches on and off.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b = Vec::new();
        if let Base::Truncated { eps, .. } = self.base {
            b.push(eps);
        }
        if let Base::Ring { center, .. } = self.base {
            if center > 0.0 && center < self.cutoff.big_r {
                b.push(center);
            }
        }
        if let Base::Shell { inner, outer } = self.base {
            b.push(inner);
            b.push(outer);
        }
        b.push(self.cutoff.r);
        b.push(self.cutoff.big_r);
        let s = self.support();
        b.retain(|x| *x <= s);
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    pub fn is_nonincreasing(&self) -> bool {
        match self.base {
            Base::Ring { center, .. } => center <= 0.0,
            Base::Shell { .. } => false,
            Base::Truncated { gamma, .. } => gamma >= 0.0,
            _ => true,
        }
    }

    pub fn label(&self) -> String {
        let b = match self.base {
            Base::One => "plateau".to_string(),
            Base::Truncated { gamma, eps } => format!("truncated(gamma={},eps={})", short(gamma), short(eps)),
            Base::Gaussian { a } => format!("gaussian(a={})", short(a)),
            Base::Algebraic { c, m } => format!("algebraic(c={},m={})", short(c), short(m)),
            Base::Ring { center, width } => format!("ring(c={},w={})", short(center), short(width)),
            Base::Shell { inner, outer } => format!("shell({},{})", short(inner), short(outer)),
        };
        let mut s = format!("{b}*cutoff({},{})", short(self.cutoff.r), short(self.cutoff.big_r));
        if self.scale != 1.0 {
            s = format!("{}*{s}", short(self.scale));
        }
        s
    }
}

/// Drops representation noise such as `0.30000000000000004`.
fn short(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-3 {
        return format!("{x:e}");
    }
    format!("{}", (x * 1e9).round() / 1e9)
}
