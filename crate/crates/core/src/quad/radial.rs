//! Composite Gauss rules on geometrically graded panels.

use rayon::prelude::*;

use super::{check_finite, weighted_sums, GaussRule, QuadResult, QuadratureSpec};
use crate::error::{Error, Result};

/// `∫_a^b f(t) dt` with panels graded toward `a` (ratio 2).
///
/// `a = 0` is allowed: panels then shrink toward the origin and the remaining piece
/// `[0, a_min]` is added from a power-law fit of the two innermost nodes.
pub fn radial_integrate<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let r = radial_integrate_vec(|t| vec![f(t)], 1, &[a, b], spec)?;
    Ok(r[0])
}

/// Vector-valued version over consecutive intervals `[breaks[i], breaks[i+1]]`.
///
/// `f` must return `m` components. Each interval is graded toward its left end.
pub fn radial_integrate_vec<F>(f: F, m: usize, breaks: &[f64], spec: &QuadratureSpec) -> Result<Vec<QuadResult>>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    if breaks.len() < 2 {
        return Err(Error::param("breaks", "need at least two breakpoints"));
    }
    for w in breaks.windows(2) {
        if !(w[0] >= 0.0 && w[1] > w[0] && w[1].is_finite()) {
            return Err(Error::param("breaks", format!("invalid interval [{}, {}]", w[0], w[1])));
        }
    }
    let coarse = pass(&f, m, breaks, spec, spec.subdivisions)?;
    let fine = pass(&f, m, breaks, spec, 2 * spec.subdivisions)?;
    Ok(fine
        .iter()
        .zip(&coarse)
        .map(|(a, b)| QuadResult::new(*a, (a - b).abs()))
        .collect())
}

fn pass<F>(f: &F, m: usize, breaks: &[f64], spec: &QuadratureSpec, sub: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Vec<f64> + Sync,
{
    let rule = GaussRule::legendre(spec.gauss_order);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut tail_floor = None;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let panels = if lo == 0.0 {
            let floor = hi * 0.5f64.powi(spec.origin_levels as i32);
            tail_floor = Some(floor);
            graded(floor, hi, sub, spec.min_panels)
        } else {
            graded(lo, hi, sub, spec.min_panels)
        };
        for (a, b) in panels {
            for (x, wt) in rule.mapped(a, b) {
                nodes.push(x);
                weights.push(wt);
            }
        }
    }
    let vals: Vec<Vec<f64>> = nodes.par_iter().map(|&x| f(x)).collect();
    check_finite(&vals, &nodes, "radial quadrature")?;
    let mut sums = weighted_sums(&vals, &weights, m);
    if let Some(floor) = tail_floor {
        // the first two nodes are the innermost ones
        let (x1, x2) = (nodes[0], nodes[1]);
        for (c, s) in sums.iter_mut().enumerate() {
            *s += power_tail(vals[0][c], vals[1][c], x1, x2, floor)?;
        }
    }
    Ok(sums)
}

/// `∫_0^floor g` assuming `g(t) = g1 (t/x1)^p` with `p` fitted through two nodes.
fn power_tail(g1: f64, g2: f64, x1: f64, x2: f64, floor: f64) -> Result<f64> {
    if g1 == 0.0 || g2 == 0.0 || g1.signum() != g2.signum() {
        return Ok(0.0);
    }
    let p = (g2 / g1).ln() / (x2 / x1).ln();
    if p <= -1.0 + 1e-9 {
        return Err(Error::Numerical(format!(
            "integrand behaves like t^{p:.3} at the origin and is not integrable"
        )));
    }
    Ok(g1 * floor * (floor / x1).powf(p) / (p + 1.0))
}

/// Panels on `[lo, hi]`: geometric ratio-2 grading from `lo`, each split in `sub`
/// equal parts and refined until no panel exceeds `(hi-lo)/min_panels`.
pub(crate) fn graded(lo: f64, hi: f64, sub: usize, min_panels: usize) -> Vec<(f64, f64)> {
    let mut edges = vec![lo];
    let mut x = lo;
    while 2.0 * x < hi * (1.0 - 1e-12) {
        x *= 2.0;
        edges.push(x);
    }
    edges.push(hi);
    let max_w = (hi - lo) / min_panels as f64;
    let mut out = Vec::new();
    for e in edges.windows(2) {
        let w = e[1] - e[0];
        let k = sub.max((w / max_w).ceil() as usize);
        let h = w / k as f64;
        for j in 0..k {
            let a = e[0] + j as f64 * h;
            let b = if j + 1 == k { e[1] } else { a + h };
            out.push((a, b));
        }
    }
    out
}
