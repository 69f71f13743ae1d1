//! The space-time kernel that a weak dielectric perturbation imprints on
//! the vacuum: scalar profile along r1 at fixed r2 and t, the far-field
//! falloff of the full tensor, and the vacuum-energy shift of a uniform
//! perturbation against its continuum limit.

use nalgebra::Vector3;
use squeezekit::field::{
    g_scalar, gamma_position_tensor, tensor_norm, vacuum_energy_shift, LatticeConfig,
    PerturbationProfile,
};
use squeezekit::Error;

fn main() -> squeezekit::Result<()> {
    let c = 1.0;
    let (r2, t) = (2.0, 1.0);
    println!("scalar profile at r2 = {r2}, t = {t}:");
    println!("{:>8} {:>14} {:>14}", "r1", "re", "im");
    for i in 1..=14 {
        let r1 = 0.3 * i as f64;
        match g_scalar(r1, r2, t, c) {
            Ok(g) => println!("{r1:>8.2} {:>14.6e} {:>14.6e}", g.re, g.im),
            Err(Error::LightCone { .. }) => println!("{r1:>8.2} {:>14} {:>14}", "on cone", ""),
            Err(e) => return Err(e),
        }
    }

    println!("\nfar-field tensor norm (slope should approach -4):");
    let target = Vector3::new(0.0, 0.3, 0.4);
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..5 {
        let r = 10.0 * 2f64.powi(i);
        let x1 = Vector3::new(r, 0.0, 0.0);
        let norm = tensor_norm(&gamma_position_tensor(&x1, &target, c, 0.01 * r, 0.004)?);
        let slope = prev
            .map(|(r0, n0)| ((norm / n0).ln() / (r / r0).ln()).to_string())
            .unwrap_or_default();
        println!("  r = {r:>6.1}: norm {norm:.4e}  {slope}");
        prev = Some((r, norm));
    }

    let lattice = LatticeConfig::new(2.0 * std::f64::consts::PI, 32, 1.0, 1.0, 1.0)?;
    let profile = PerturbationProfile::constant(&lattice, 0.05)?;
    let k_max = 12.5;
    let shift = vacuum_energy_shift(&profile, &lattice, k_max)?;
    let continuum = -0.05 * lattice.volume() * k_max.powi(4) / (16.0 * std::f64::consts::PI.powi(2));
    println!("\nvacuum-energy shift: lattice {shift:.6e}, continuum {continuum:.6e}");
    Ok(())
}
