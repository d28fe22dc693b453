//! Gauss rules from the Golub-Welsch eigenvalue problem.

use nalgebra::{DMatrix, SymmetricEigen};

/// Nodes and weights of a Gauss rule on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// Gauss-Legendre rule with `m` nodes (exact through degree `2m-1`).
    pub fn legendre(m: usize) -> Self {
        Self::symmetric_jacobi(m, 0.0)
    }

    /// Gauss rule for the weight `(1-x²)^alpha` on `[-1,1]`, `alpha > -1`.
    ///
    /// With `x = cos θ` and `alpha = (p-1)/2` this integrates `∫_0^π g(θ) sin^p θ dθ`.
    pub fn symmetric_jacobi(m: usize, alpha: f64) -> Self {
        assert!(m >= 1, "a Gauss rule needs at least one node");
        assert!(alpha > -1.0);
        let mut j = DMatrix::<f64>::zeros(m, m);
        for k in 1..m {
            let kf = k as f64;
            let a2 = 2.0 * alpha;
            let den = (2.0 * kf + a2 + 1.0) * (2.0 * kf + a2 - 1.0);
            // the Chebyshev weight (alpha = -1/2) has a removable 0/0 at k = 1
            let b = if den.abs() < 1e-12 { 0.5 } else { kf * (kf + a2) / den };
            let off = b.sqrt();
            j[(k, k - 1)] = off;
            j[(k - 1, k)] = off;
        }
        let mu0 = weight_mass(alpha);
        let eig = SymmetricEigen::new(j);
        let mut pairs: Vec<(f64, f64)> = (0..m)
            .map(|i| {
                let v0 = eig.eigenvectors[(0, i)];
                (eig.eigenvalues[i], mu0 * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        // enforce the exact reflection symmetry of the weight
        for i in 0..m / 2 {
            let k = m - 1 - i;
            let x = 0.5 * (pairs[k].0 - pairs[i].0);
            let w = 0.5 * (pairs[k].1 + pairs[i].1);
            pairs[i] = (-x, w);
            pairs[k] = (x, w);
        }
        if m % 2 == 1 {
            pairs[m / 2].0 = 0.0;
        }
        Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (c + h * x, h * w))
    }
}

/// `∫_{-1}^{1} (1-x²)^alpha dx` for integer or half-integer `alpha`, else by recursion
/// from the beta function at small arguments.
fn weight_mass(alpha: f64) -> f64 {
    // μ(α) = μ(α-1)·2α/(2α+1), anchored at μ(0) = 2 and μ(-1/2) = π
    let twice = (2.0 * alpha).round();
    if (2.0 * alpha - twice).abs() < 1e-12 && twice >= -1.0 {
        let (mut a, mut mu) = if twice as i64 % 2 == 0 {
            (0.0, 2.0)
        } else {
            (-0.5, std::f64::consts::PI)
        };
        while a + 0.5 < alpha {
            a += 1.0;
            mu *= 2.0 * a / (2.0 * a + 1.0);
        }
        return mu;
    }
    // general alpha: composite Gauss-Legendre in θ on ∫ sin^{2α+1}θ dθ
    let rule = GaussRule::legendre(40);
    let p = 2.0 * alpha + 1.0;
    let panels = 64;
    let h = std::f64::consts::PI / panels as f64;
    (0..panels)
        .map(|k| {
            rule.mapped(k as f64 * h, (k + 1) as f64 * h)
                .map(|(t, w)| w * t.sin().powf(p))
                .sum::<f64>()
        })
        .sum()
}
