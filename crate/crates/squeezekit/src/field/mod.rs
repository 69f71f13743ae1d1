//! Lattice-regularized electromagnetic layer: transverse mode bases on a
//! periodic box, vacuum kernels and functionals, the photon-number
//! functional, coherent Maxwell evolution, dielectric perturbation
//! kernels, and the space-time squeezing propagator.

mod lattice;
mod modes;
mod perturb;

pub use lattice::{LatticeConfig, TransverseField, CONJ_TOL, TRANSVERSE_TOL};
pub use modes::{field_state_to_modes, wigner_vacuum, FieldMode, KernelMap, ModeKey, ModeState};
pub use perturb::{
    delta_kernel, g_scalar, gamma_momentum, gamma_position_tensor, gamma_static_scalar,
    tensor_norm, vacuum_energy_shift, DeltaKernel, PerturbationProfile,
};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Transverse projector P(k) = I - k_hat k_hat^T.
pub fn transverse_projector(k: &Vector3<f64>) -> Result<Matrix3<f64>> {
    let norm = k.norm();
    if norm == 0.0 {
        return Err(Error::ZeroWaveVector);
    }
    let khat = k / norm;
    Ok(Matrix3::identity() - khat * khat.transpose())
}

/// Momentum-space vacuum kernel sqrt(eps/mu) |k| P(k).
pub fn vacuum_kernel_momentum(k: &Vector3<f64>, eps: f64, mu: f64) -> Result<Matrix3<f64>> {
    let p = transverse_projector(k)?;
    Ok(p * ((eps / mu).sqrt() * k.norm()))
}

/// Ground-state log-functional exponent for the magnetic field:
/// -(1/2 hbar V) sum_k sqrt(eps/mu) |B(k)|^2 / |k|.
pub fn ground_functional_log(b: &TransverseField, lattice: &LatticeConfig) -> Result<f64> {
    b.check_invariants(lattice)?;
    let w = (lattice.eps / lattice.mu).sqrt();
    Ok(-b.inverse_k_weighted_norm(lattice) * w / (2.0 * lattice.hbar))
}

/// Dual functional for the displacement field, with sqrt(mu/eps).
pub fn ground_functional_log_d(d: &TransverseField, lattice: &LatticeConfig) -> Result<f64> {
    d.check_invariants(lattice)?;
    let w = (lattice.mu / lattice.eps).sqrt();
    Ok(-d.inverse_k_weighted_norm(lattice) * w / (2.0 * lattice.hbar))
}

/// Photon-number functional
/// N[B, D] = (1/2 hbar V) sum_k [sqrt(eps/mu)|B|^2 + sqrt(mu/eps)|D|^2]/|k|.
/// For a classical monochromatic wave this equals E / (hbar c |k|).
pub fn photon_number(
    b: &TransverseField,
    d: &TransverseField,
    lattice: &LatticeConfig,
) -> Result<f64> {
    Ok(-(ground_functional_log(b, lattice)? + ground_functional_log_d(d, lattice)?))
}

/// Classical field energy (1/2) int d^3r (D^2/eps + B^2/mu) on the lattice.
pub fn field_energy(
    b: &TransverseField,
    d: &TransverseField,
    lattice: &LatticeConfig,
) -> f64 {
    let v = lattice.volume();
    0.5 * (d.norm_sqr() / lattice.eps + b.norm_sqr() / lattice.mu) / v
}

/// Exact spectral Maxwell rotation of the coherent amplitudes:
/// B(t) = B cos wt - (i/eps)(k x D) sin(wt)/w,
/// D(t) = D cos wt + (i/mu)(k x B) sin(wt)/w, with w = c|k|.
pub fn evolve_coherent(
    b: &TransverseField,
    d: &TransverseField,
    lattice: &LatticeConfig,
    t: f64,
) -> Result<(TransverseField, TransverseField)> {
    b.check_invariants(lattice)?;
    d.check_invariants(lattice)?;
    lattice::rotate_coherent(b, d, lattice, t)
}
