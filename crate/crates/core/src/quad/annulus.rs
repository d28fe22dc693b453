//! Polar products over model annuli (co-area form of the volume integral).

use super::{radial_integrate_vec, AxialRule, QuadResult, QuadratureSpec, SphereRule};
use crate::error::Result;
use crate::model::{ModelSpace, Orientation};

/// How directions are integrated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngularMode {
    /// Tensor rule on the whole sphere.
    Full,
    /// The integrand depends on `ω` only through `ω_n`.
    Axial,
}

/// `∫_{breaks[0] < ρ < breaks.last()} ∫_{S^{n−1}} f(ρ, ω) dm` in the polar chart of the
/// given orientation, where `dm = polar_weight(ρ, ω) dρ dν`.
///
/// `f` returns `m` components; points where the weight cannot be evaluated abort.
pub fn annulus_integrate<F>(
    model: &ModelSpace,
    orientation: Orientation,
    f: F,
    m: usize,
    breaks: &[f64],
    spec: &QuadratureSpec,
    mode: AngularMode,
) -> Result<Vec<QuadResult>>
where
    F: Fn(f64, &[f64]) -> Vec<f64> + Sync,
{
    let n = model.dim();
    let (points, weights) = match mode {
        AngularMode::Full => {
            let r = SphereRule::new(n, spec.sphere_order);
            (r.points, r.weights)
        }
        AngularMode::Axial => {
            let r = AxialRule::new(n, spec.axial_order);
            (r.points, r.weights)
        }
    };
    radial_integrate_vec(
        |rho| {
            let mut acc = vec![0.0; m];
            for (w, wt) in points.iter().zip(&weights) {
                let dm = match model.polar_weight(orientation, rho, w) {
                    Ok(v) => v,
                    Err(_) => return vec![f64::NAN; m],
                };
                let vals = f(rho, w);
                for (a, v) in acc.iter_mut().zip(vals) {
                    *a += wt * dm * v;
                }
            }
            acc
        },
        m,
        breaks,
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Measure;
    use crate::quad::sphere_area;
    use approx::assert_relative_eq;

    #[test]
    fn log_integral_is_exact_on_randers() {
        let spec = QuadratureSpec::default();
        for &t in &[0.0, 0.5, 0.9] {
            let m = ModelSpace::randers_flat(3, t, Measure::BusemannHausdorff).unwrap();
            for mode in [AngularMode::Full, AngularMode::Axial] {
                let r = annulus_integrate(&m, Orientation::MinusRadial, |rho, _| vec![rho.powi(-3)], 1, &[1e-4, 0.5], &spec, mode)
                    .unwrap();
                let exact = 4.0 * std::f64::consts::PI * (0.5f64 / 1e-4).ln();
                assert_relative_eq!(r[0].value, exact, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn euclidean_annulus_volume() {
        let spec = QuadratureSpec::default();
        let m = ModelSpace::euclidean(4, Measure::BusemannHausdorff).unwrap();
        let r = annulus_integrate(&m, Orientation::MinusRadial, |_, _| vec![1.0], 1, &[0.3, 1.2], &spec, AngularMode::Full).unwrap();
        let omega = sphere_area(4) / 4.0;
        assert_relative_eq!(r[0].value, omega * (1.2f64.powi(4) - 0.3f64.powi(4)), max_relative = 1e-12);
    }

    #[test]
    fn angular_dependence_is_integrated() {
        // ∫ ω_n over the backward unit shell: (1 + tω_n)ω_n averages to t·|S|/n
        let spec = QuadratureSpec::default();
        let t = 0.4;
        let m = ModelSpace::randers_flat(3, t, Measure::BusemannHausdorff).unwrap();
        let r = annulus_integrate(&m, Orientation::MinusRadial, |rho, w| vec![w[2] / (rho * rho)], 1, &[0.5, 1.5], &spec, AngularMode::Axial)
            .unwrap();
        assert_relative_eq!(r[0].value, t * 4.0 * std::f64::consts::PI / 3.0, max_relative = 1e-12);
    }
}
