//! Periodic lattice, k-grid bookkeeping, and sparse transverse field
//! amplitudes with the real-field conjugation constraint.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Max |k.f(k)| / ||f|| tolerated before an amplitude counts as
/// longitudinal.
pub const TRANSVERSE_TOL: f64 = 1e-12;
/// Tolerance on f(-k) = f(k)^*.
pub const CONJ_TOL: f64 = 1e-12;

/// Periodic box with homogeneous medium constants.
#[derive(Debug, Clone)]
pub struct LatticeConfig {
    /// Box length per axis.
    pub l: f64,
    /// Sites per axis, even.
    pub m_sites: usize,
    pub eps: f64,
    pub mu: f64,
    pub hbar: f64,
    /// Momentum cutoff, at most pi * M / L.
    pub k_max: f64,
}

impl LatticeConfig {
    pub fn new(l: f64, m_sites: usize, eps: f64, mu: f64, hbar: f64) -> Result<Self> {
        if l <= 0.0 || eps <= 0.0 || mu <= 0.0 || hbar <= 0.0 {
            return Err(Error::InvalidParameter {
                key: "lattice".into(),
                reason: "L, eps, mu, hbar must all be positive".into(),
            });
        }
        if m_sites < 2 || m_sites % 2 != 0 {
            return Err(Error::InvalidParameter {
                key: "m_sites".into(),
                reason: format!("sites per axis must be even and >= 2, got {m_sites}"),
            });
        }
        let k_max = std::f64::consts::PI * m_sites as f64 / l;
        Ok(Self {
            l,
            m_sites,
            eps,
            mu,
            hbar,
            k_max,
        })
    }

    pub fn with_cutoff(mut self, k_max: f64) -> Result<Self> {
        let nyquist = std::f64::consts::PI * self.m_sites as f64 / self.l;
        if k_max > nyquist {
            return Err(Error::CutoffBeyondNyquist {
                k_max,
                nyquist,
            });
        }
        self.k_max = k_max;
        Ok(self)
    }

    pub fn light_speed(&self) -> f64 {
        1.0 / (self.eps * self.mu).sqrt()
    }

    pub fn volume(&self) -> f64 {
        self.l.powi(3)
    }

    pub fn cell_volume(&self) -> f64 {
        (self.l / self.m_sites as f64).powi(3)
    }

    /// Physical wave vector for integer mode numbers.
    pub fn wave_vector(&self, n: [i32; 3]) -> Vector3<f64> {
        let base = 2.0 * std::f64::consts::PI / self.l;
        Vector3::new(n[0] as f64, n[1] as f64, n[2] as f64) * base
    }

    /// Largest mode index kept per axis (Nyquist plane excluded so every
    /// mode has a conjugate partner).
    pub fn max_index(&self) -> i32 {
        self.m_sites as i32 / 2 - 1
    }

    /// All nonzero grid modes with |k| <= k_max, deterministic order.
    pub fn modes_in_cutoff(&self) -> Vec<[i32; 3]> {
        let m = self.max_index();
        let mut out = Vec::new();
        for nx in -m..=m {
            for ny in -m..=m {
                for nz in -m..=m {
                    let n = [nx, ny, nz];
                    if n == [0, 0, 0] {
                        continue;
                    }
                    if self.wave_vector(n).norm() <= self.k_max {
                        out.push(n);
                    }
                }
            }
        }
        out
    }

    /// Deterministic orthonormal transverse dyad (e1, e2) for mode n:
    /// the smallest-index coordinate axis not parallel to k seeds
    /// Gram-Schmidt, then e2 = k_hat x e1.
    pub fn polarization_basis(&self, n: [i32; 3]) -> Result<(Vector3<f64>, Vector3<f64>)> {
        let k = self.wave_vector(n);
        let norm = k.norm();
        if norm == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        let khat = k / norm;
        let axes = [Vector3::x(), Vector3::y(), Vector3::z()];
        let seed = axes
            .iter()
            .find(|a| a.cross(&khat).norm() > 1e-9)
            .expect("some axis is not parallel to k");
        let e1 = (seed - khat * seed.dot(&khat)).normalize();
        let e2 = khat.cross(&e1);
        Ok((e1, e2))
    }
}

/// Sparse transverse field: complex 3-vector amplitude per kept mode.
/// The zero mode is excluded; f(-k) = f(k)^* is enforced.
#[derive(Debug, Clone, Default)]
pub struct TransverseField {
    pub amplitudes: BTreeMap<[i32; 3], Vector3<C64>>,
}

fn conj_v(v: &Vector3<C64>) -> Vector3<C64> {
    v.map(|c| c.conj())
}

impl TransverseField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Real plane wave f(r) = 2 Re[coeff e_lambda e^{ik.r}]: sets the
    /// conjugate pair of amplitudes (V coeff, V coeff^*) at (n, -n).
    pub fn plane_wave(
        lattice: &LatticeConfig,
        n: [i32; 3],
        polarization: usize,
        coeff: C64,
    ) -> Result<Self> {
        let mut f = Self::zero();
        f.add_plane_wave(lattice, n, polarization, coeff)?;
        Ok(f)
    }

    pub fn add_plane_wave(
        &mut self,
        lattice: &LatticeConfig,
        n: [i32; 3],
        polarization: usize,
        coeff: C64,
    ) -> Result<()> {
        if polarization > 1 {
            return Err(Error::InvalidParameter {
                key: "polarization".into(),
                reason: format!("must be 0 or 1, got {polarization}"),
            });
        }
        let (e1, e2) = lattice.polarization_basis(n)?;
        let e = if polarization == 0 { e1 } else { e2 };
        let v = lattice.volume();
        let amp = e.map(|x| coeff * x * v);
        let neg = [-n[0], -n[1], -n[2]];
        *self
            .amplitudes
            .entry(n)
            .or_insert_with(Vector3::zeros) += amp;
        *self
            .amplitudes
            .entry(neg)
            .or_insert_with(Vector3::zeros) += conj_v(&amp);
        Ok(())
    }

    /// Directly set a conjugate pair of amplitudes; `amp` must be
    /// transverse to k(n).
    pub fn set_pair(
        &mut self,
        lattice: &LatticeConfig,
        n: [i32; 3],
        amp: Vector3<C64>,
    ) -> Result<()> {
        let k = lattice.wave_vector(n);
        if k.norm() == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        let kdot = amp.iter().zip(k.iter()).map(|(a, b)| a * *b).sum::<C64>();
        if kdot.norm() > TRANSVERSE_TOL * amp.norm().max(1e-300) * k.norm() {
            return Err(Error::NonTransverse {
                violation: kdot.norm(),
                tol: TRANSVERSE_TOL,
            });
        }
        self.amplitudes.insert(n, amp);
        self.amplitudes.insert([-n[0], -n[1], -n[2]], conj_v(&amp));
        Ok(())
    }

    pub fn check_invariants(&self, lattice: &LatticeConfig) -> Result<()> {
        let scale = self
            .amplitudes
            .values()
            .map(|v| v.norm())
            .fold(0.0_f64, f64::max)
            .max(1e-300);
        for (n, amp) in &self.amplitudes {
            let k = lattice.wave_vector(*n);
            if k.norm() == 0.0 && amp.norm() > 0.0 {
                return Err(Error::ZeroWaveVector);
            }
            let kdot = amp.iter().zip(k.iter()).map(|(a, b)| a * *b).sum::<C64>();
            if kdot.norm() > TRANSVERSE_TOL * scale * k.norm() {
                return Err(Error::NonTransverse {
                    violation: kdot.norm(),
                    tol: TRANSVERSE_TOL,
                });
            }
            let neg = [-n[0], -n[1], -n[2]];
            let partner = self
                .amplitudes
                .get(&neg)
                .cloned()
                .unwrap_or_else(Vector3::zeros);
            if (conj_v(amp) - partner).norm() > CONJ_TOL * scale {
                return Err(Error::NonTransverse {
                    violation: (conj_v(amp) - partner).norm(),
                    tol: CONJ_TOL,
                });
            }
        }
        Ok(())
    }

    /// sum_k |f(k)|^2 (Fourier-side Parseval mass; divide by V for the
    /// position-space integral of |f|^2).
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|v| v.norm_squared()).sum()
    }

    /// (1/V) sum_{k != 0} |f(k)|^2 / |k|.
    pub fn inverse_k_weighted_norm(&self, lattice: &LatticeConfig) -> f64 {
        self.amplitudes
            .iter()
            .filter(|(n, _)| **n != [0, 0, 0])
            .map(|(n, v)| v.norm_squared() / lattice.wave_vector(*n).norm())
            .sum::<f64>()
            / lattice.volume()
    }

    pub fn mode(&self, n: [i32; 3]) -> Vector3<C64> {
        self.amplitudes
            .get(&n)
            .cloned()
            .unwrap_or_else(Vector3::zeros)
    }
}

/// k x v for real k and complex v.
fn cross_c(k: &Vector3<f64>, v: &Vector3<C64>) -> Vector3<C64> {
    Vector3::new(
        v.z * k.y - v.y * k.z,
        v.x * k.z - v.z * k.x,
        v.y * k.x - v.x * k.y,
    )
}

pub(super) fn rotate_coherent(
    b: &TransverseField,
    d: &TransverseField,
    lattice: &LatticeConfig,
    t: f64,
) -> Result<(TransverseField, TransverseField)> {
    let mut keys: Vec<[i32; 3]> = b
        .amplitudes
        .keys()
        .chain(d.amplitudes.keys())
        .cloned()
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let mut b_t = TransverseField::zero();
    let mut d_t = TransverseField::zero();
    let i = C64::new(0.0, 1.0);
    for n in keys {
        let k = lattice.wave_vector(n);
        let knorm = k.norm();
        if knorm == 0.0 {
            return Err(Error::ZeroWaveVector);
        }
        let w = lattice.light_speed() * knorm;
        let (cos, sinc) = ((w * t).cos(), (w * t).sin() / w);
        let b0 = b.mode(n);
        let d0 = d.mode(n);
        let kxd = cross_c(&k, &d0);
        let kxb = cross_c(&k, &b0);
        let b_new = b0.map(|c| c * cos) - kxd.map(|c| c * i * (sinc / lattice.eps));
        let d_new = d0.map(|c| c * cos) + kxb.map(|c| c * i * (sinc / lattice.mu));
        if b_new.norm() > 0.0 {
            b_t.amplitudes.insert(n, b_new);
        }
        if d_new.norm() > 0.0 {
            d_t.amplitudes.insert(n, d_new);
        }
    }
    Ok((b_t, d_t))
}
