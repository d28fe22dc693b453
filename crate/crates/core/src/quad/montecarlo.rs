//! Stratified Monte Carlo over a coordinate box.

use rand::Rng;
use rayon::prelude::*;

use super::{pairwise_sum, QuadratureSpec};
use crate::error::{Error, Result};
use crate::model::ModelSpace;
use crate::sampling;
use crate::vector::euclid;

#[derive(Clone, Debug, PartialEq)]
pub struct McResult {
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub samples: usize,
}

/// `∫ f dm` over `[−L, L]^n` minus the Euclidean ball `|x| < exclude`.
///
/// The box is cut into equal strata, each sampled from its own seeded stream, so the
/// result is fixed by `spec.seed` regardless of scheduling. Points outside the model
/// domain contribute zero.
pub fn box_montecarlo<F>(model: &ModelSpace, f: F, m: usize, half_width: f64, exclude: f64, spec: &QuadratureSpec) -> Result<McResult>
where
    F: Fn(&[f64]) -> Vec<f64> + Sync,
{
    let n = model.dim();
    if !(half_width > 0.0) {
        return Err(Error::param("half_width", "box must have positive size"));
    }
    let per_axis = ((spec.mc_samples as f64 / 4.0).powf(1.0 / n as f64).floor() as usize).max(1);
    let strata = per_axis.pow(n as u32);
    let per = (spec.mc_samples / strata).max(2);
    let cell = 2.0 * half_width / per_axis as f64;
    let vol = cell.powi(n as i32);
    let results: Vec<Result<(Vec<f64>, Vec<f64>)>> = (0..strata)
        .into_par_iter()
        .map(|s| {
            let mut r = sampling::rng(spec.seed, s as u64);
            let mut idx = s;
            let lower: Vec<f64> = (0..n)
                .map(|_| {
                    let i = idx % per_axis;
                    idx /= per_axis;
                    -half_width + i as f64 * cell
                })
                .collect();
            let mut sum = vec![0.0; m];
            let mut sq = vec![0.0; m];
            for _ in 0..per {
                let x: Vec<f64> = lower.iter().map(|lo| lo + cell * r.gen::<f64>()).collect();
                if euclid(&x) < exclude || euclid(&x) >= model.domain_radius() {
                    continue;
                }
                let d = model.density(&x)?;
                let v = f(&x);
                for c in 0..m {
                    let y = v[c] * d;
                    if !y.is_finite() {
                        return Err(Error::NonFinite {
                            context: "monte carlo".into(),
                            location: euclid(&x),
                        });
                    }
                    sum[c] += y;
                    sq[c] += y * y;
                }
            }
            let k = per as f64;
            let mean: Vec<f64> = sum.iter().map(|s| s / k).collect();
            let var: Vec<f64> = (0..m)
                .map(|c| ((sq[c] / k - mean[c] * mean[c]).max(0.0)) * k / (k - 1.0))
                .collect();
            Ok((
                mean.iter().map(|mu| vol * mu).collect(),
                var.iter().map(|v| vol * vol * v / k).collect(),
            ))
        })
        .collect();
    let mut parts = Vec::with_capacity(strata);
    for r in results {
        parts.push(r?);
    }
    let values = (0..m)
        .map(|c| pairwise_sum(&parts.iter().map(|p| p.0[c]).collect::<Vec<_>>()))
        .collect();
    let stderr = (0..m)
        .map(|c| pairwise_sum(&parts.iter().map(|p| p.1[c]).collect::<Vec<_>>()).sqrt())
        .collect();
    Ok(McResult {
        values,
        stderr,
        samples: strata * per,
    })
}
