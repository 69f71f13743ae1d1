//! Evolve a squeezed two-mode kernel with the closed form and cross-check
//! against the direct Riccati integration.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use squeezekit::evolution::{evolve_kernel_closed, evolve_kernel_numeric};
use squeezekit::linalg::{lift, real_part};
use squeezekit::linalg::spd_eig;
use squeezekit::oscillator::{solve_frequency, OscillatorSystem};

fn main() -> squeezekit::Result<()> {
    let u = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, 0.3, 2.0]);
    let sys = OscillatorSystem::standard(1.0, u, 1.0)?;
    let freq = solve_frequency(&sys)?;

    // start squeezed: real part away from Omega, nonzero imaginary part
    let a0 = DMatrix::from_row_slice(2, 2, &[2.5, 0.0, 0.0, 0.4]);
    let b0 = DMatrix::from_row_slice(2, 2, &[0.0, 0.6, 0.6, 0.0]);
    let k0 = lift(&a0) + lift(&b0) * C64::new(0.0, 1.0);

    println!("{:>6} {:>14} {:>14} {:>12}", "t", "min eig a(t)", "max eig a(t)", "rk4 defect");
    for i in 0..=8 {
        let t = i as f64 * 0.75;
        let k = evolve_kernel_closed(&k0, &freq, t)?;
        let numeric = evolve_kernel_numeric(&k0, &sys, t, 1e-3)?;
        let defect = (&numeric - &k).norm() / k.norm();
        let eig = spd_eig("a(t)", &real_part(&k))?;
        println!(
            "{t:>6.2} {:>14.6} {:>14.6} {defect:>12.2e}",
            eig.min_eigenvalue(),
            eig.vals.max(),
        );
    }
    Ok(())
}
