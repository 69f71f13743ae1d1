//! Factorization of a translation-invariant Gaussian field state into
//! independent one-mode oscillators, one pair of real quadrature
//! oscillators per (k, polarization) with frequency c|k|.

use std::collections::BTreeMap;

use nalgebra::{DVector, Vector3};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::RMat;
use crate::oscillator::GaussianState;
use crate::wigner::{wigner_value, PhasePoint};

use super::{photon_number, LatticeConfig, TransverseField};

pub type ModeKey = ([i32; 3], u8);
/// Per-(mode, mode) complex kernel entries; only diagonal entries are a
/// supported representation, off-diagonal ones belong to the
/// perturbative path.
pub type KernelMap = BTreeMap<(ModeKey, ModeKey), C64>;

/// One (k, lambda) mode: two real quadrature oscillators (real and
/// imaginary part of the complex amplitude).
#[derive(Debug, Clone)]
pub struct FieldMode {
    pub n: [i32; 3],
    pub polarization: u8,
    pub omega: f64,
    pub re_state: GaussianState,
    pub im_state: GaussianState,
}

/// A field state packaged as independent one-mode Gaussian states.
#[derive(Debug, Clone)]
pub struct ModeState {
    pub modes: Vec<FieldMode>,
    pub hbar: f64,
}

/// Lexicographic half-space representative: exactly one of n, -n.
fn is_half_space(n: [i32; 3]) -> bool {
    n > [0, 0, 0]
}

struct ModeScales {
    x_scale: f64,
    p_scale: f64,
}

fn scales(lattice: &LatticeConfig, k_norm: f64) -> ModeScales {
    let c = lattice.light_speed();
    let v = lattice.volume();
    ModeScales {
        // x = sqrt(2) (eps/mu)^{1/4} Re beta_B / (|k| sqrt(c V))
        x_scale: 2f64.sqrt() * (lattice.eps / lattice.mu).powf(0.25) / (k_norm * (c * v).sqrt()),
        // p = sqrt(2) (mu/eps)^{1/4} sqrt(c/V) Re beta_D
        p_scale: 2f64.sqrt() * (lattice.mu / lattice.eps).powf(0.25) * (c / v).sqrt(),
    }
}

fn quadratures(
    lattice: &LatticeConfig,
    n: [i32; 3],
    polarization: u8,
    b: &TransverseField,
    d: &TransverseField,
) -> Result<(C64, C64, ModeScales)> {
    let (e1, e2) = lattice.polarization_basis(n)?;
    let e = if polarization == 0 { e1 } else { e2 };
    let dot = |f: &Vector3<C64>| -> C64 { f.iter().zip(e.iter()).map(|(a, b)| a * *b).sum() };
    let beta_b = dot(&b.mode(n));
    let beta_d = dot(&d.mode(n));
    let s = scales(lattice, lattice.wave_vector(n).norm());
    Ok((beta_b, beta_d, s))
}

/// Package coherent amplitudes plus per-mode kernels into one-mode
/// Gaussian states. Off-diagonal kernel entries are rejected.
pub fn field_state_to_modes(
    lattice: &LatticeConfig,
    b: &TransverseField,
    d: &TransverseField,
    kernels: &KernelMap,
) -> Result<ModeState> {
    b.check_invariants(lattice)?;
    d.check_invariants(lattice)?;
    for ((k1, k2), _) in kernels.iter() {
        if k1 != k2 {
            return Err(Error::UnsupportedRepresentation);
        }
    }

    let mut keys: Vec<[i32; 3]> = b
        .amplitudes
        .keys()
        .chain(d.amplitudes.keys())
        .cloned()
        .chain(kernels.keys().map(|(k, _)| k.0))
        .filter(|n| is_half_space(*n))
        .collect();
    keys.sort_unstable();
    keys.dedup();

    let mut modes = Vec::new();
    for n in keys {
        let omega = lattice.light_speed() * lattice.wave_vector(n).norm();
        for pol in 0..2u8 {
            let (beta_b, beta_d, s) = quadratures(lattice, n, pol, b, d)?;
            let kernel = kernels
                .get(&((n, pol), (n, pol)))
                .cloned()
                .unwrap_or(C64::new(omega, 0.0));
            let mk_state = |x: f64, p: f64| -> Result<GaussianState> {
                GaussianState::new(
                    DVector::from_vec(vec![x]),
                    DVector::from_vec(vec![p]),
                    RMat::from_element(1, 1, kernel.re),
                    RMat::from_element(1, 1, kernel.im),
                    lattice.hbar,
                    1.0,
                )
            };
            modes.push(FieldMode {
                n,
                polarization: pol,
                omega,
                re_state: mk_state(beta_b.re * s.x_scale, beta_d.re * s.p_scale)?,
                im_state: mk_state(beta_b.im * s.x_scale, beta_d.im * s.p_scale)?,
            });
        }
    }
    Ok(ModeState {
        modes,
        hbar: lattice.hbar,
    })
}

impl ModeState {
    /// Inverse packaging: rebuild the coherent amplitudes.
    pub fn to_field(&self, lattice: &LatticeConfig) -> Result<(TransverseField, TransverseField)> {
        let mut b = TransverseField::zero();
        let mut d = TransverseField::zero();
        let mut b_amp: BTreeMap<[i32; 3], Vector3<C64>> = BTreeMap::new();
        let mut d_amp: BTreeMap<[i32; 3], Vector3<C64>> = BTreeMap::new();
        for mode in &self.modes {
            let (e1, e2) = lattice.polarization_basis(mode.n)?;
            let e = if mode.polarization == 0 { e1 } else { e2 };
            let s = scales(lattice, lattice.wave_vector(mode.n).norm());
            let beta_b = C64::new(
                mode.re_state.xi[0] / s.x_scale,
                mode.im_state.xi[0] / s.x_scale,
            );
            let beta_d = C64::new(
                mode.re_state.pi[0] / s.p_scale,
                mode.im_state.pi[0] / s.p_scale,
            );
            *b_amp.entry(mode.n).or_insert_with(Vector3::zeros) += e.map(|x| beta_b * x);
            *d_amp.entry(mode.n).or_insert_with(Vector3::zeros) += e.map(|x| beta_d * x);
        }
        for (n, amp) in b_amp {
            b.set_pair(lattice, n, amp)?;
        }
        for (n, amp) in d_amp {
            d.set_pair(lattice, n, amp)?;
        }
        Ok((b, d))
    }

    /// Wigner functional value at field point (B, D): the product of the
    /// per-mode Wigner values.
    pub fn wigner(
        &self,
        lattice: &LatticeConfig,
        b: &TransverseField,
        d: &TransverseField,
    ) -> Result<f64> {
        b.check_invariants(lattice)?;
        d.check_invariants(lattice)?;
        let mut w = 1.0;
        for mode in &self.modes {
            let (beta_b, beta_d, s) = quadratures(lattice, mode.n, mode.polarization, b, d)?;
            let pt_re = PhasePoint::new(
                DVector::from_vec(vec![beta_b.re * s.x_scale]),
                DVector::from_vec(vec![beta_d.re * s.p_scale]),
            );
            let pt_im = PhasePoint::new(
                DVector::from_vec(vec![beta_b.im * s.x_scale]),
                DVector::from_vec(vec![beta_d.im * s.p_scale]),
            );
            w *= wigner_value(&mode.re_state, &pt_re) * wigner_value(&mode.im_state, &pt_im);
        }
        Ok(w)
    }

    /// Photon number of the packaged coherent amplitudes, summed per
    /// oscillator as (Omega xi^2 + pi^2/Omega) / (2 hbar).
    pub fn coherent_photon_number(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| {
                let per = |s: &GaussianState| {
                    (m.omega * s.xi[0] * s.xi[0] + s.pi[0] * s.pi[0] / m.omega)
                        / (2.0 * self.hbar)
                };
                per(&m.re_state) + per(&m.im_state)
            })
            .sum()
    }
}

/// W_vac[B, D] = exp(-2 N[B, D]).
pub fn wigner_vacuum(
    b: &TransverseField,
    d: &TransverseField,
    lattice: &LatticeConfig,
) -> Result<f64> {
    Ok((-2.0 * photon_number(b, d, lattice)?).exp())
}
