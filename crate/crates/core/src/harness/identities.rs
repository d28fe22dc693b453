//! Reverse-metric identities `∇(−f) = −∇̃f` and `Δ(−f) = −Δ̃f` on random fields.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{self, BumpMixture, FdSteps, ScaledField};
use crate::model::{Measure, ModelSpace};
use crate::sampling::rng;
use crate::vector::euclid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReverseIdentitySummary {
    pub fields: usize,
    pub points: usize,
    pub max_gradient_error: f64,
    pub max_laplacian_error: f64,
    /// Points skipped because `du ≈ 0` there.
    pub near_critical: usize,
}

/// Relative errors over `fields` random mixtures on Randers models with random drift,
/// each evaluated at `points` random points of the unit ball.
pub fn reverse_identity_check(n: usize, fields: usize, points: usize, seed: u64) -> Result<ReverseIdentitySummary> {
    let fd = FdSteps::default();
    let parts: Vec<Result<(f64, f64, usize)>> = (0..fields)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed, i as u64);
            let t = r.gen_range(0.05..0.9);
            let model = ModelSpace::randers_flat(n, t, Measure::BusemannHausdorff)?;
            let rev = model.reverse();
            let f = BumpMixture::random(n, 3, 0.8, seed ^ (i as u64 + 1) << 8, None)?;
            let neg = ScaledField {
                factor: -1.0,
                inner: std::sync::Arc::new(f.clone()),
            };
            let (mut eg, mut el, mut skipped) = (0.0f64, 0.0f64, 0usize);
            for _ in 0..points {
                let x: Vec<f64> = loop {
                    let x: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
                    if euclid(&x) < 1.0 {
                        break x;
                    }
                };
                let g1 = field::gradient(&model, &neg, &x, &fd)?;
                let g2 = field::gradient(&rev, &f, &x, &fd)?;
                let diff: Vec<f64> = g1.as_slice().iter().zip(g2.as_slice()).map(|(a, b)| a + b).collect();
                eg = eg.max(euclid(&diff) / euclid(g2.as_slice()).max(1e-300));
                let l1 = field::numeric_laplacian(&model, &neg, &x, &fd)?;
                let l2 = field::numeric_laplacian(&rev, &f, &x, &fd)?;
                if l1.near_critical || l2.near_critical {
                    skipped += 1;
                    continue;
                }
                el = el.max((l1.value + l2.value).abs() / l2.value.abs().max(1e-3));
            }
            Ok((eg, el, skipped))
        })
        .collect();
    let mut out = ReverseIdentitySummary {
        fields,
        points,
        max_gradient_error: 0.0,
        max_laplacian_error: 0.0,
        near_critical: 0,
    };
    for p in parts {
        let (g, l, s) = p?;
        out.max_gradient_error = out.max_gradient_error.max(g);
        out.max_laplacian_error = out.max_laplacian_error.max(l);
        out.near_critical += s;
    }
    Ok(out)
}
