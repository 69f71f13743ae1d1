//! Print a phase-space slice of the Wigner function of a squeezed state
//! before and after evolving for a quarter period. Evolution is done by
//! running the classical flow backwards, no state update needed.

use nalgebra::{DMatrix, DVector};
use squeezekit::oscillator::{GaussianState, OscillatorSystem};
use squeezekit::wigner::{wigner_evolved, wigner_value, PhasePoint};

fn main() -> squeezekit::Result<()> {
    let omega: f64 = 1.5;
    let state = GaussianState::new(
        DVector::from_vec(vec![0.8]),
        DVector::from_vec(vec![0.0]),
        DMatrix::from_element(1, 1, 3.0 * omega), // squeezed in x
        DMatrix::from_element(1, 1, 0.0),
        1.0,
        1.0,
    )?;
    let sys = OscillatorSystem::standard(1.0, DMatrix::from_element(1, 1, omega * omega), 1.0)?;
    let quarter = 0.5 * std::f64::consts::PI / omega;

    let grid: Vec<f64> = (-6..=6).map(|i| i as f64 * 0.35).collect();
    for &t in &[0.0, quarter] {
        println!("t = {t:.4}");
        for &p in grid.iter().rev() {
            let mut line = String::new();
            for &x in &grid {
                let pt = PhasePoint::new(
                    DVector::from_vec(vec![x]),
                    DVector::from_vec(vec![p]),
                );
                let w = if t == 0.0 {
                    wigner_value(&state, &pt)
                } else {
                    wigner_evolved(&state, &pt, &sys, t)?
                };
                line.push(match w {
                    v if v > 0.8 => '#',
                    v if v > 0.4 => '+',
                    v if v > 0.1 => '.',
                    _ => ' ',
                });
            }
            println!("  |{line}|");
        }
        println!();
    }
    Ok(())
}
