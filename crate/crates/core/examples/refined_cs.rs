//! Random campaign for the refined Cauchy-Schwarz inequality of the dual Randers norm.

use finsler_hardy::harness::refined_cs_campaign;

fn main() -> finsler_hardy::error::Result<()> {
    for n in [2, 3, 5] {
        for b in [0.0, 0.3, 0.7] {
            let s = refined_cs_campaign(n, b, 100_000, 42)?;
            println!(
                "n={n} b={b:.1}: min slack {:+.3e} (scaled {:+.3e}), colinear {:.1e}, {}",
                s.min_slack,
                s.min_scaled_slack,
                s.colinear_max_error,
                if s.passed { "ok" } else { "VIOLATED" }
            );
        }
    }
    let s = refined_cs_campaign(3, 0.7, 100_000, 42)?;
    println!("\nslack histogram, n=3 b=0.7:");
    for bin in &s.histogram {
        println!("  [{:>9.1e}, {:>9.1e})  {}", bin.lo, bin.hi, bin.count);
    }
    Ok(())
}
