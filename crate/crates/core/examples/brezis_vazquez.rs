//! Hardy, Rellich and Poincare inequalities with curvature improvements on the
//! hyperbolic ball.

use finsler_hardy::harness::{
    battery, bv_constant, hardy_bv_report, poincare_report, rellich_bv_report, Evaluator, InequalityReport,
};
use finsler_hardy::model::{Measure, ModelSpace};
use finsler_hardy::quad::QuadratureSpec;

fn show(r: &InequalityReport) {
    println!(
        "  {:<40} lhs {:>12.6e} rhs {:>12.6e} slack {:>+11.4e} {}",
        r.function,
        r.lhs_total,
        r.rhs_total,
        r.slack,
        if r.passed { "ok" } else { "FAILED" }
    );
}

fn main() -> finsler_hardy::error::Result<()> {
    for n in [4, 6] {
        let model = ModelSpace::hyperbolic(n, -1.0, Measure::BusemannHausdorff)?;
        let ev = Evaluator::new(&model, &QuadratureSpec::default());
        println!("n = {n}, C = {}", bv_constant(&model)?);
        println!(" Hardy:");
        for u in battery::hardy_battery(&model, 4)? {
            show(&hardy_bv_report(&ev, &u, 0.0)?);
        }
        println!(" Rellich:");
        for u in battery::rellich_battery(&model, 0.0, 3)? {
            let r = rellich_bv_report(&ev, &u, 0.0)?;
            show(&r);
            for t in &r.rhs {
                println!("      {:<28} {:>+12.6e}", t.name, t.value);
            }
        }
    }

    let model = ModelSpace::hyperbolic(3, -1.0, Measure::BusemannHausdorff)?;
    let ev = Evaluator::new(&model, &QuadratureSpec::default());
    println!("Poincare, n = 3:");
    for u in battery::gaussian_battery(&model, 4)? {
        show(&poincare_report(&ev, &u)?);
    }
    Ok(())
}
