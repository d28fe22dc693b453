//! The admissibility functional G^beta on radial test functions.
//!
//! Nonincreasing profiles give G = 0 up to quadrature error; a shell profile,
//! which rises and falls, does not.

use finsler_hardy::field::RadialField;
use finsler_hardy::harness::{battery, gbeta_report, Evaluator};
use finsler_hardy::model::{Measure, ModelSpace, Orientation};
use finsler_hardy::profile::{Base, Cutoff, RadialProfile};
use finsler_hardy::quad::QuadratureSpec;

fn main() -> finsler_hardy::error::Result<()> {
    let model = ModelSpace::randers_flat(6, 0.5, Measure::HolmesThompson)?;
    let ev = Evaluator::new(&model, &QuadratureSpec::default());
    for beta in [0.0, 1.0] {
        println!("beta = {beta}");
        for u in battery::hardy_battery(&model, 4)? {
            let r = gbeta_report(&ev, &u, beta)?;
            println!("  {:<44} G = {:+.3e}  (sum of terms {:.3e})", r.function, r.slack, r.scale());
        }
    }

    let low = ModelSpace::randers_flat(4, 0.5, Measure::BusemannHausdorff)?;
    let ev = Evaluator::new(&low, &QuadratureSpec::default());
    let shell = RadialProfile::new(Base::Shell { inner: 0.2, outer: 0.6 }, Cutoff::new(0.6, 1.0)?)?;
    let u = RadialField::new(&low, Orientation::MinusRadial, shell);
    let r = gbeta_report(&ev, &u, 0.0)?;
    println!("n = 4, {}: G = {:+.6e} via {:?}", r.function, r.slack, r.route);
    Ok(())
}
