//! Randomized campaign for the refined Cauchy–Schwarz inequality of the dual norm.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::norm::MinkowskiNorm;
use crate::sampling::{gaussian_vec, rng};
use crate::vector::Covector;

const CHUNK: usize = 4096;

/// Scaled-slack bin `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub n: usize,
    pub b: f64,
    pub samples: usize,
    pub seed: u64,
    pub uniformity: f64,
    /// Minimum of the raw slack.
    pub min_slack: f64,
    /// Minimum of `slack / max(1, F*²(ξ+η))`.
    pub min_scaled_slack: f64,
    pub argmin_xi: Vec<f64>,
    pub argmin_eta: Vec<f64>,
    pub max_abs_slack: f64,
    pub histogram: Vec<HistogramBin>,
    /// `η = sξ`, `s > 0`: worst deviation from `s²F*²(ξ)(1 − 1/Λ_F)`.
    pub colinear_max_error: f64,
    /// `η = −kξ`, `k ≥ 1`: worst deviation from the closed form.
    pub opposite_max_error: f64,
    /// `min (f''(t) − 2F*²(η)/Λ_F)/max(1, F*²(η))` along `f(t) = F*²(ξ + tη)`.
    pub curvature_min_margin: f64,
    pub passed: bool,
}

const EDGES: [f64; 8] = [f64::NEG_INFINITY, -1e-10, 1e-12, 1e-6, 1e-3, 1e-1, 1.0, f64::INFINITY];

struct Chunk {
    min_slack: f64,
    min_scaled: (f64, Vec<f64>, Vec<f64>),
    max_abs: f64,
    counts: [usize; 7],
    colinear: f64,
    opposite: f64,
    curvature: f64,
}


/// `F*²(−kξ + ξ)` closed-form slack for the opposite case.
pub fn opposite_slack(norm: &MinkowskiNorm, xi: &Covector, k: f64) -> f64 {
    let lam = norm.uniformity();
    let fp = norm.dual_norm(xi).powi(2);
    let fm = norm.dual_norm(&-xi).powi(2);
    fp * (2.0 * k - 1.0) + fm * ((k - 1.0).powi(2) - k * k / lam)
}

pub fn refined_cs_campaign(n: usize, b: f64, samples: usize, seed: u64) -> Result<CampaignSummary> {
    let norm = MinkowskiNorm::randers(n, b)?;
    let lam = norm.uniformity();
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Chunk> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = rng(seed, c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut out = Chunk {
                min_slack: f64::INFINITY,
                min_scaled: (f64::INFINITY, Vec::new(), Vec::new()),
                max_abs: 0.0,
                counts: [0; 7],
                colinear: 0.0,
                opposite: 0.0,
                curvature: f64::INFINITY,
            };
            for _ in 0..count {
                let xi = Covector::new(gaussian_vec(&mut r, n));
                let eta = Covector::new(gaussian_vec(&mut r, n));
                let slack = norm.refined_cs_slack(&xi, &eta);
                let scale = norm.dual_norm(&(&xi + &eta)).powi(2).max(1.0);
                let scaled = slack / scale;
                out.min_slack = out.min_slack.min(slack);
                out.max_abs = out.max_abs.max(slack.abs());
                if scaled < out.min_scaled.0 {
                    out.min_scaled = (scaled, xi.0.clone(), eta.0.clone());
                }
                let bin = EDGES.windows(2).position(|w| scaled >= w[0] && scaled < w[1]).unwrap_or(6);
                out.counts[bin] += 1;

                let s = r.gen_range(0.01..5.0);
                let col = xi.scale(s);
                let expect = s * s * norm.dual_norm(&xi).powi(2) * (1.0 - 1.0 / lam);
                let got = norm.refined_cs_slack(&xi, &col);
                let sc = norm.dual_norm(&(&xi + &col)).powi(2).max(1.0);
                out.colinear = out.colinear.max((got - expect).abs() / sc);

                let k = r.gen_range(1.0..4.0);
                let opp = xi.scale(-k);
                let got = norm.refined_cs_slack(&xi, &opp);
                let sc = norm.dual_norm(&xi).powi(2).max(norm.dual_norm(&opp).powi(2)).max(1.0);
                out.opposite = out.opposite.max((got - opposite_slack(&norm, &xi, k)).abs() / sc);

                let t = r.gen_range(0.0..1.0);
                let at = xi.axpy(t, &eta);
                if let Ok(g) = norm.dual_fundamental_form(&at, &eta, &eta) {
                    let fe = norm.dual_norm(&eta).powi(2);
                    out.curvature = out.curvature.min((2.0 * g - 2.0 * fe / lam) / fe.max(1.0));
                }
            }
            out
        })
        .collect();
    let mut min_slack = f64::INFINITY;
    let mut best = (f64::INFINITY, Vec::new(), Vec::new());
    let mut max_abs: f64 = 0.0;
    let mut counts = [0usize; 7];
    let (mut colinear, mut opposite, mut curvature) = (0.0f64, 0.0f64, f64::INFINITY);
    for p in parts {
        min_slack = min_slack.min(p.min_slack);
        if p.min_scaled.0 < best.0 {
            best = p.min_scaled;
        }
        max_abs = max_abs.max(p.max_abs);
        for (a, b) in counts.iter_mut().zip(p.counts) {
            *a += b;
        }
        colinear = colinear.max(p.colinear);
        opposite = opposite.max(p.opposite);
        curvature = curvature.min(p.curvature);
    }
    let histogram = EDGES
        .windows(2)
        .zip(counts)
        .map(|(w, count)| HistogramBin { lo: w[0], hi: w[1], count })
        .collect();
    let passed = best.0 >= -1e-10
        && (b != 0.0 || max_abs <= 1e-12)
        && colinear <= 1e-12
        && opposite <= 1e-12
        && curvature >= -1e-10;
    Ok(CampaignSummary {
        n,
        b,
        samples,
        seed,
        uniformity: lam,
        min_slack,
        min_scaled_slack: best.0,
        argmin_xi: best.1,
        argmin_eta: best.2,
        max_abs_slack: max_abs,
        histogram,
        colinear_max_error: colinear,
        opposite_max_error: opposite,
        curvature_min_margin: curvature,
        passed,
    })
}
