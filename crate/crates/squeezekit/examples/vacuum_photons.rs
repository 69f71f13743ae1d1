//! Coherent plane waves on a periodic lattice: total energy, the photon
//! number functional, and the value of the vacuum Wigner functional at the
//! field point. Free evolution rotates each mode and leaves all three
//! invariant.

use num_complex::Complex64 as C64;
use squeezekit::field::{
    evolve_coherent, field_energy, photon_number, wigner_vacuum, LatticeConfig, TransverseField,
};

fn main() -> squeezekit::Result<()> {
    let lattice = LatticeConfig::new(3.0, 16, 2.25, 1.0, 1.0)?;
    println!(
        "lattice: L = {}, M = {}, light speed {:.4}",
        lattice.l,
        lattice.m_sites,
        lattice.light_speed()
    );

    // a single mode with matched B and D amplitudes
    let n = [1, 2, 0];
    let k = lattice.wave_vector(n).norm();
    let b_amp = C64::new(0.6, 0.0);
    let d_amp = b_amp * (lattice.eps / lattice.mu).sqrt();
    let b = TransverseField::plane_wave(&lattice, n, 0, b_amp)?;
    let d = TransverseField::plane_wave(&lattice, n, 0, d_amp)?;

    let e = field_energy(&b, &d, &lattice);
    let photons = photon_number(&b, &d, &lattice)?;
    println!("energy {e:.6}, photons {photons:.6}, E/(hbar c k) = {:.6}", e / (lattice.hbar * lattice.light_speed() * k));
    println!("vacuum Wigner value: {:.6e}", wigner_vacuum(&b, &d, &lattice)?);

    for t in [0.5, 1.0, 2.0] {
        let (bt, dt) = evolve_coherent(&b, &d, &lattice, t)?;
        println!(
            "t = {t}: energy {:.6}, photons {:.6}",
            field_energy(&bt, &dt, &lattice),
            photon_number(&bt, &dt, &lattice)?
        );
    }
    Ok(())
}
