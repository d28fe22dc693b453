//! Uncertainty principle on a Randers model, and its invariance under scaling.

use std::sync::Arc;

use finsler_hardy::field::{ScalarField, ScaledField};
use finsler_hardy::harness::{battery, uncertainty_report, Evaluator, Route};
use finsler_hardy::model::{Measure, ModelSpace};
use finsler_hardy::quad::QuadratureSpec;

fn main() -> finsler_hardy::error::Result<()> {
    let model = ModelSpace::randers_flat(4, 0.3, Measure::BusemannHausdorff)?;
    let ev = Evaluator::new(&model, &QuadratureSpec::default());
    let polar = ev.clone().with_route(Route::Polar);
    for u in battery::gaussian_battery(&model, 5)? {
        let r = uncertainty_report(&ev, &u, 0.0)?;
        let big = ScaledField { factor: 10.0, inner: Arc::new(u.clone()) as Arc<dyn ScalarField> };
        let r10 = uncertainty_report(&polar, &big, 0.0)?;
        println!(
            "{:<36} slack/scale {:+.6e}   10u: {:+.6e}",
            r.function,
            r.slack / r.scale(),
            r10.slack / r10.scale()
        );
    }
    Ok(())
}
