//! Sharpness sweep for the Rellich constant in dimension 6, with the
//! closed-form Laplacian cross-checked by finite differences.

use finsler_hardy::harness::{default_eps, rellich_sharpness_sweep, Evaluator, SweepParams};
use finsler_hardy::model::{Measure, ModelSpace};
use finsler_hardy::quad::QuadratureSpec;

fn main() -> finsler_hardy::error::Result<()> {
    let model = ModelSpace::randers_flat(6, 0.5, Measure::BusemannHausdorff)?;
    let ev = Evaluator::new(&model, &QuadratureSpec::default());
    let t = rellich_sharpness_sweep(&ev, &SweepParams::new(0.0, 0.5, 1.0, default_eps()))?;
    for r in &t.rows {
        println!("eps {:.0e}: quotient {:.8}", r.eps, r.quotient);
    }
    println!("limit {:.8} vs {} (rel. error {:.1e})", t.limit, t.sharp_constant, t.limit_relative_error);
    for c in &t.checks {
        println!("  {:<32} {:.3e} {}", c.name, c.value, if c.passed { "ok" } else { "FAILED" });
    }
    Ok(())
}
