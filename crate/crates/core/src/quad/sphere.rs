//! Product rules on `S^{n-1}`.
//!
//! Coordinates: `ω_n = cos θ₁`, the remaining components are `sin θ₁` times a point
//! of `S^{n-2}`, recursively, ending with a trapezoid rule in the azimuth. Each polar
//! angle uses the Gauss rule for its `sin^p` weight.

use rayon::prelude::*;

use super::{pairwise_sum, GaussRule};

/// Area of the unit sphere `S^{n-1} ⊂ R^n`, i.e. `n ω_n`.
pub fn sphere_area(n: usize) -> f64 {
    assert!(n >= 1);
    // A(1) = 2, A(2) = 2π, A(m) = A(m-2) · 2π/(m-2)
    let mut a = if n % 2 == 1 { 2.0 } else { std::f64::consts::TAU };
    let mut m = if n % 2 == 1 { 1 } else { 2 };
    while m < n {
        m += 2;
        a *= std::f64::consts::TAU / (m - 2) as f64;
    }
    a
}

/// Tensor product rule on the full sphere.
#[derive(Clone, Debug)]
pub struct SphereRule {
    pub n: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    /// `order` nodes per polar angle and `2·order` azimuthal nodes.
    pub fn new(n: usize, order: usize) -> Self {
        assert!(n >= 2);
        let (points, weights) = build(n, order);
        Self { n, points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn build(n: usize, order: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    if n == 2 {
        let m = 2 * order;
        let h = std::f64::consts::TAU / m as f64;
        let pts = (0..m)
            .map(|k| {
                let a = (k as f64 + 0.5) * h;
                vec![a.cos(), a.sin()]
            })
            .collect();
        return (pts, vec![h; m]);
    }
    let p = (n - 2) as f64;
    let rule = GaussRule::symmetric_jacobi(order, (p - 1.0) / 2.0);
    let (sub_pts, sub_w) = build(n - 1, order);
    let mut pts = Vec::with_capacity(rule.len() * sub_pts.len());
    let mut ws = Vec::with_capacity(pts.capacity());
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let s = (1.0 - x * x).max(0.0).sqrt();
        for (q, wq) in sub_pts.iter().zip(&sub_w) {
            let mut v: Vec<f64> = q.iter().map(|c| s * c).collect();
            v.push(*x);
            pts.push(v);
            ws.push(w * wq);
        }
    }
    (pts, ws)
}

/// Rule for integrands that depend on `ω` only through `ω_n`.
///
/// Each node carries a representative point `(sin θ, 0, …, 0, cos θ)` and the weight
/// already includes the area of `S^{n-2}`.
#[derive(Clone, Debug)]
pub struct AxialRule {
    pub n: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl AxialRule {
    pub fn new(n: usize, order: usize) -> Self {
        assert!(n >= 2);
        let p = (n - 2) as f64;
        let rule = GaussRule::symmetric_jacobi(order, (p - 1.0) / 2.0);
        let ring = if n == 2 { 2.0 } else { sphere_area(n - 1) };
        let points = rule
            .nodes
            .iter()
            .map(|x| {
                let mut v = vec![0.0; n];
                v[0] = (1.0 - x * x).max(0.0).sqrt();
                v[n - 1] = *x;
                v
            })
            .collect();
        // n = 2: ∫_0^{2π} g(cos φ) dφ = 2∫_{-1}^{1} g(x)(1-x²)^{-1/2} dx
        let weights = rule.weights.iter().map(|w| w * ring).collect();
        Self { n, points, weights }
    }
}

/// `∫_{S^{n-1}} g dν` with the tensor rule of the given order.
pub fn sphere_integrate<G>(g: G, n: usize, order: usize) -> f64
where
    G: Fn(&[f64]) -> f64 + Sync,
{
    let rule = SphereRule::new(n, order);
    let vals: Vec<f64> = rule
        .points
        .par_iter()
        .zip(&rule.weights)
        .map(|(p, w)| w * g(p))
        .collect();
    pairwise_sum(&vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
        for n in 2..8 {
            assert!((sphere_integrate(|_| 1.0, n, 4) - sphere_area(n)).abs() < 1e-12 * sphere_area(n));
        }
    }

    #[test]
    fn odd_coordinate_averages_vanish() {
        for n in 2..7 {
            let v = sphere_integrate(|w| w[n - 1], n, 8);
            assert!(v.abs() < 1e-13);
            let v = sphere_integrate(|w| w[0] * w[n - 1], n, 8);
            assert!(v.abs() < 1e-13);
        }
    }

    #[test]
    fn squared_coordinate_average() {
        // mean of ω_i² on S^{n-1} is 1/n
        let v = sphere_integrate(|w| w[2] * w[2], 3, 8);
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-13);
        for n in 2..7 {
            for i in 0..n {
                let v = sphere_integrate(|w| w[i] * w[i], n, 8);
                assert!((v - sphere_area(n) / n as f64).abs() < 1e-12, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn exact_through_degree_fifteen() {
        // ∫ ω_1^4 ω_3^{10} over S^2 against the closed form for monomials
        let mono = |a: &[u32]| -> f64 {
            // 2 Π Γ((a_i+1)/2) / Γ((Σa_i + n)/2), evaluated by log-gamma free recursion
            fn half_gamma(k: u32) -> f64 {
                // Γ(k/2)
                if k == 1 {
                    PI.sqrt()
                } else if k == 2 {
                    1.0
                } else {
                    (k as f64 / 2.0 - 1.0) * half_gamma(k - 2)
                }
            }
            let num: f64 = a.iter().map(|&e| half_gamma(e + 1)).product();
            let s: u32 = a.iter().sum::<u32>() + a.len() as u32;
            2.0 * num / half_gamma(s)
        };
        let v = sphere_integrate(|w| w[0].powi(4) * w[2].powi(10), 3, 8);
        assert!((v - mono(&[4, 0, 10])).abs() < 1e-14, "{v}");
        let v = sphere_integrate(|w| w[1].powi(6) * w[3].powi(8), 4, 8);
        assert!((v - mono(&[0, 6, 0, 8])).abs() < 1e-13, "{v}");
    }

    #[test]
    fn axial_rule_matches_full_rule() {
        for n in 2..7 {
            let g = |w: &[f64]| (1.0 + 0.5 * w[w.len() - 1]).powf(-3.0);
            let full = sphere_integrate(g, n, 24);
            let ax = AxialRule::new(n, 24);
            let a: f64 = ax.points.iter().zip(&ax.weights).map(|(p, w)| w * g(p)).sum();
            assert!((full - a).abs() < 1e-12 * full.abs(), "n={n}: {full} vs {a}");
        }
    }
}
