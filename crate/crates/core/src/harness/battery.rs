//! Fixed batteries of test functions.

use crate::error::{Error, Result};
use crate::field::{BumpMixture, RadialField};
use crate::model::{ModelSpace, Orientation};
use crate::profile::{Base, Cutoff, RadialProfile};

fn orientation(i: usize) -> Orientation {
    if i % 2 == 0 {
        Orientation::MinusRadial
    } else {
        Orientation::PlusRadial
    }
}

/// `count` nonincreasing radial profiles cycling through plateau, Gaussian and
/// algebraic shapes with varying cut-off radii.
pub fn monotone_profiles(count: usize) -> Result<Vec<RadialProfile>> {
    (0..count)
        .map(|i| {
            let j = i as f64;
            let r = 0.2 + 0.15 * (i % 5) as f64;
            let big_r = r + 0.3 + 0.2 * ((i / 5) % 4) as f64;
            let base = match i % 3 {
                0 => Base::Gaussian { a: 0.5 + 0.7 * j },
                1 => Base::Algebraic { c: 0.2 + 0.1 * (i % 4) as f64, m: 0.5 + 0.25 * (i % 3) as f64 },
                _ => Base::One,
            };
            RadialProfile::new(base, Cutoff::new(r, big_r)?)
        })
        .collect()
}

/// Smooth shells supported away from the origin.
pub fn shell_profiles(count: usize) -> Result<Vec<RadialProfile>> {
    (0..count)
        .map(|i| {
            let inner = 0.1 + 0.08 * (i % 5) as f64;
            let outer = inner + 0.3 + 0.25 * ((i / 5) % 3) as f64;
            RadialProfile::new(Base::Shell { inner, outer }, Cutoff::new(outer, outer + 1.0)?)
        })
        .collect()
}

/// Radial fields for the Hardy-type reports, alternating `f(ρ₋)` and `−f(ρ₊)`.
pub fn hardy_battery(model: &ModelSpace, count: usize) -> Result<Vec<RadialField>> {
    Ok(monotone_profiles(count)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| RadialField::new(model, orientation(i), p))
        .collect())
}

/// Radial fields admissible for the Rellich reports.
///
/// When `n > β + 4` nonincreasing radial functions qualify. Otherwise `G^β` of a
/// function with `u(0) ≠ 0` does not vanish, and the battery consists of shells
/// vanishing near the origin, which qualify on reversible models.
pub fn rellich_battery(model: &ModelSpace, beta: f64, count: usize) -> Result<Vec<RadialField>> {
    if model.dim() as f64 > beta + 4.0 {
        return hardy_battery(model, count);
    }
    if !model.is_reversible() {
        return Err(Error::Precondition(
            "no admissible radial battery for n <= beta + 4 on a nonreversible model".into(),
        ));
    }
    Ok(shell_profiles(count)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| RadialField::new(model, orientation(i), p))
        .collect())
}

/// Radial Gaussian bumps of varying width, for the Poincaré report.
pub fn gaussian_battery(model: &ModelSpace, count: usize) -> Result<Vec<RadialField>> {
    (0..count)
        .map(|i| {
            let a = 0.3 * (1.0 + i as f64);
            let big_r = 0.8 + 0.3 * (i % 4) as f64;
            let p = RadialProfile::new(Base::Gaussian { a }, Cutoff::new(0.5 * big_r, big_r)?)?;
            Ok(RadialField::new(model, orientation(i), p))
        })
        .collect()
}

/// Random sign-changing, non-symmetric smooth fields.
pub fn mixture_battery(n: usize, count: usize, seed: u64) -> Result<Vec<BumpMixture>> {
    (0..count)
        .map(|i| BumpMixture::random(n, 2 + i % 4, 0.6, seed.wrapping_add(i as u64), Some(Cutoff::new(0.6, 1.0)?)))
        .collect()
}
