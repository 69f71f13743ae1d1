//! Build a coupled three-mode oscillator, put it in normal form, and
//! inspect its ground state: kernel, ground energy, and the uncertainty
//! product each pair of conjugate quadratures saturates.

use nalgebra::DMatrix;
use squeezekit::oscillator::{
    energy, ground_state, normalize_system, solve_frequency, OscillatorSystem,
};
use squeezekit::uncertainty::symplectic_residual;

fn main() -> squeezekit::Result<()> {
    // nearest-neighbor chain with an off-diagonal kinetic coupling
    let g = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.2, 1.0, 0.2, 0.0, 0.2, 1.0]);
    let u = DMatrix::from_row_slice(3, 3, &[2.0, -0.5, 0.0, -0.5, 2.5, -0.5, 0.0, -0.5, 3.0]);
    let sys = OscillatorSystem::new(1.0, g, u, 1.0)?;

    let (normalized, t) = normalize_system(&sys)?;
    println!("coordinate change T =\n{t:.6}");

    let freq = solve_frequency(&normalized)?;
    println!("normal frequencies: {:?}", freq.eig.vals.iter().map(|w| w.sqrt()).collect::<Vec<_>>());

    let gs = ground_state(&normalized)?;
    println!("ground kernel a = Omega =\n{:.6}", gs.a);

    let (e_cm, e_int) = energy(&gs, &normalized)?;
    println!("ground energy: {:.8} (center of mass {:.1e})", e_int, e_cm);

    let residual = symplectic_residual(&gs.correlations(), gs.hbar)?;
    println!("saturation residual: {residual:.2e}");
    Ok(())
}
