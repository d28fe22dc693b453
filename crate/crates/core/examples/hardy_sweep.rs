//! Sharpness sweep for the Hardy constant on a Randers model.
//!
//! ```text
//! cargo run --release --example hardy_sweep -- ht
//! ```

use finsler_hardy::harness::{default_eps, hardy_sharpness_sweep, Evaluator, SweepParams};
use finsler_hardy::model::{Measure, ModelSpace, Orientation};
use finsler_hardy::quad::QuadratureSpec;

fn main() -> finsler_hardy::error::Result<()> {
    let measure = match std::env::args().nth(1).as_deref() {
        Some("ht") => Measure::HolmesThompson,
        _ => Measure::BusemannHausdorff,
    };
    let model = ModelSpace::randers_flat(3, 0.5, measure)?;
    let ev = Evaluator::new(&model, &QuadratureSpec::default());
    for o in [Orientation::MinusRadial, Orientation::PlusRadial] {
        let p = SweepParams::new(0.0, 0.5, 1.0, default_eps()).with_orientation(o);
        let t = hardy_sharpness_sweep(&ev, &p)?;
        println!("{} [{}], sharp constant {}", t.theorem, t.orientation, t.sharp_constant);
        println!("{:>8} {:>14} {:>14} {:>12}", "eps", "I1", "I2", "quotient");
        for r in &t.rows {
            println!("{:>8.0e} {:>14.6} {:>14.6} {:>12.8}", r.eps, r.i1, r.i2, r.quotient);
        }
        for e in &t.extrapolations {
            println!("  {:<12} limit {:.8} (rel. error {:.1e})", e.method, e.limit, e.relative_error);
        }
        println!();
    }
    Ok(())
}
