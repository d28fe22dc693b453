//! Randers norm, its dual, and the asymmetry constants.
//!
//! ```text
//! cargo run --example norms -- 0.5
//! ```

use finsler_hardy::norm::MinkowskiNorm;
use finsler_hardy::vector::{Covector, Vector};

fn main() -> finsler_hardy::error::Result<()> {
    let b: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0.5);
    let f = MinkowskiNorm::randers(3, b)?;

    let up = Vector::basis(3, 2);
    let down = up.scale(-1.0);
    println!("F(e3) = {}, F(-e3) = {}", f.norm(&up), f.norm(&down));

    let xi = Covector::new(vec![0.3, -0.2, 0.9]);
    println!("F*(xi) closed form = {:.15}", f.dual_norm(&xi));
    println!("F*(xi) by sup      = {:.15}", f.dual_norm_numeric(&xi));

    let y = f.legendre_inv(&xi);
    println!("L^-1(xi) = {:?}, F = {:.15}", y.as_slice(), f.norm(&y));

    let lam = f.sample_reversibility(100_000, 1);
    let big = f.sample_uniformity(10_000, 1);
    println!("lambda_F = {} (sampled {:.6})", f.reversibility(), lam.estimate);
    println!("Lambda_F = {} (sampled {:.6})", f.uniformity(), big.estimate);
    Ok(())
}
