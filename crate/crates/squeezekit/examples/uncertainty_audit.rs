//! Sample squeezed states and audit two exact statements: the symplectic
//! uncertainty relation is saturated by every Gaussian pure state, and the
//! position-momentum entropy sum exceeds its bound by exactly
//! (1/2) ln det(1 + (a^{-1} b)^2).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use squeezekit::oscillator::sample;
use squeezekit::uncertainty::{entropic_excess, entropies, symplectic_residual};

fn main() -> squeezekit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let hbar = 1.0;
    let bound = 2.0 * (std::f64::consts::PI * std::f64::consts::E * hbar).ln();

    println!("entropy bound for 2 modes: {bound:.6}");
    println!("{:>5} {:>12} {:>10} {:>10} {:>10}", "state", "residual", "S_x", "S_p", "excess");
    for i in 0..8 {
        let state = sample::state(2, hbar, 1.0, &mut rng);
        let residual = symplectic_residual(&state.correlations(), hbar)?;
        let (sx, sp) = entropies(&state)?;
        let excess = entropic_excess(&state)?;
        // the sum always lands exactly at bound + excess
        assert!((sx + sp - bound - excess).abs() < 1e-9);
        println!("{i:>5} {residual:>12.2e} {sx:>10.5} {sp:>10.5} {excess:>10.5}");
    }
    Ok(())
}
