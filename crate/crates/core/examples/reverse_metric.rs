//! Gradient and Laplacian of -f against the reverse-metric operators.

use finsler_hardy::harness::reverse_identity_check;

fn main() -> finsler_hardy::error::Result<()> {
    let s = reverse_identity_check(3, 20, 50, 3)?;
    println!("{} fields x {} points", s.fields, s.points);
    println!("max relative gradient error  {:.2e}", s.max_gradient_error);
    println!("max relative Laplacian error {:.2e}", s.max_laplacian_error);
    println!("points skipped near du = 0   {}", s.near_critical);
    Ok(())
}
