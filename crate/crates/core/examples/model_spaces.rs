//! Distances, polar constants and comparison functions of the model spaces.

use finsler_hardy::model::{Measure, ModelSpace, Orientation};

fn main() -> finsler_hardy::error::Result<()> {
    let randers = ModelSpace::randers_flat(3, 0.5, Measure::BusemannHausdorff)?;
    let x = [0.0, 0.0, 1.0];
    println!("Randers t=0.5: rho+(e3) = {}, rho-(e3) = {}", randers.rho_plus(&x)?, randers.rho_minus(&x)?);
    for m in [Measure::BusemannHausdorff, Measure::HolmesThompson] {
        let model = randers.with_measure(m);
        println!("  C_p[{}] = {:.12}", model.measure().tag(), model.model_constant_cp()?);
    }
    for rho in [0.25, 0.5, 1.0] {
        let lap = randers.radial_laplacian(2.0, Orientation::MinusRadial, rho)?;
        println!("  Laplacian of rho-^-2 at rho={rho}: {lap:+.6}");
    }

    let hyp = ModelSpace::hyperbolic(3, -1.0, Measure::BusemannHausdorff)?;
    let cmp = hyp.comparison();
    println!("\nhyperbolic k=-1, ball radius {}", hyp.domain_radius());
    for t in [0.5, 1.0, 2.0] {
        println!("  s({t}) = {:.6}, D({t}) = {:.6}", cmp.s(t)?, cmp.d(t)?);
    }
    println!("  rho(0.5 e1) = {:.12}", hyp.rho(Orientation::MinusRadial, &[0.5, 0.0, 0.0])?);
    Ok(())
}
