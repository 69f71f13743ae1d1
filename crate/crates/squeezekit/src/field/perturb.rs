//! First-order response of the vacuum kernel to a small static change of
//! the permittivity: momentum-space coupling Gamma, its position-space
//! scalar core, the squeezing propagator g, and the induced kernel and
//! vacuum-energy shifts.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

use super::{transverse_projector, LatticeConfig};

const TWO_PI_CUBED: f64 = 8.0 * PI * PI * PI;

/// Relative width of the light-cone exclusion band.
const LIGHT_CONE_BAND: f64 = 1e-6;

/// Relative radius gap below which the removable r1 = r2 limit is used.
const MERGE_TOL: f64 = 1e-8;

/// Momentum-space coupling: c |k1||k2| / (|k1| + |k2|) P(k1) P(k2).
pub fn gamma_momentum(k1: &Vector3<f64>, k2: &Vector3<f64>, c: f64) -> Result<Matrix3<f64>> {
    let n1 = k1.norm();
    let n2 = k2.norm();
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::ZeroWaveVector);
    }
    let p1 = transverse_projector(k1)?;
    let p2 = transverse_projector(k2)?;
    Ok(p1 * p2 * (c * n1 * n2 / (n1 + n2)))
}

/// Scalar core of the static position-space coupling,
/// c / ((2 pi)^3 r1 r2 (r1 + r2)).
pub fn gamma_static_scalar(r1: f64, r2: f64, c: f64) -> Result<f64> {
    for r in [r1, r2] {
        if r <= 0.0 {
            return Err(Error::NonPositiveRadius(r));
        }
    }
    Ok(c / (TWO_PI_CUBED * r1 * r2 * (r1 + r2)))
}

fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// f(r) = theta(r - |ct|)/r + (i/(pi r)) ln|(r - ct)/(r + ct)|.
fn f_radial(r: f64, ct: f64) -> C64 {
    let re = theta(r - ct.abs()) / r;
    let im = if ct == 0.0 {
        0.0
    } else {
        ((r - ct) / (r + ct)).abs().ln() / (PI * r)
    };
    C64::new(re, im)
}

/// d f / d r away from the light cone.
fn f_radial_deriv(r: f64, ct: f64) -> C64 {
    let re = -theta(r - ct.abs()) / (r * r);
    let im = if ct == 0.0 {
        0.0
    } else {
        -((r - ct) / (r + ct)).abs().ln() / (PI * r * r)
            + 2.0 * ct / (PI * r * (r * r - ct * ct))
    };
    C64::new(re, im)
}

/// Squeezing propagator G(r1, r2, t):
/// (f(r2) - f(r1)) / ((2 pi)^3 (r1^2 - r2^2)), with the removable
/// r1 = r2 limit -f'(r) / (2 r (2 pi)^3). Points within the light-cone
/// band |r - c|t|| < 1e-6 max(r, c|t|) are flagged instead of evaluated.
pub fn g_scalar(r1: f64, r2: f64, t: f64, c: f64) -> Result<C64> {
    for r in [r1, r2] {
        if r <= 0.0 {
            return Err(Error::NonPositiveRadius(r));
        }
    }
    let ct = c * t;
    let act = ct.abs();
    for r in [r1, r2] {
        let band = LIGHT_CONE_BAND * r.max(act);
        let distance = (r - act).abs();
        if distance < band {
            return Err(Error::LightCone { distance, band });
        }
    }
    if (r1 - r2).abs() <= MERGE_TOL * r1.max(r2) {
        let r = 0.5 * (r1 + r2);
        Ok(-f_radial_deriv(r, ct) / (2.0 * r * TWO_PI_CUBED))
    } else {
        Ok((f_radial(r2, ct) - f_radial(r1, ct)) / (TWO_PI_CUBED * (r1 * r1 - r2 * r2)))
    }
}

/// Sparse 4th-order stencil for (delta_ij Lap - d_i d_j) at spacing h,
/// as (offset, weight) pairs on the cubic 5-point-per-axis grid.
fn operator_stencil(i: usize, j: usize, h: f64) -> Vec<([i32; 3], f64)> {
    let c1 = [1.0, -8.0, 0.0, 8.0, -1.0];
    let c2 = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let mut acc: std::collections::BTreeMap<[i32; 3], f64> = std::collections::BTreeMap::new();
    let mut add = |o: [i32; 3], w: f64| {
        *acc.entry(o).or_insert(0.0) += w;
    };
    if i == j {
        // delta_ij Lap - d_i d_i: second derivatives along the two other axes
        for axis in 0..3 {
            if axis == i {
                continue;
            }
            for (s, w) in c2.iter().enumerate() {
                let mut o = [0i32; 3];
                o[axis] = s as i32 - 2;
                add(o, w / (12.0 * h * h));
            }
        }
    } else {
        for axis in 0..3 {
            for (s, w) in c2.iter().enumerate() {
                let mut o = [0i32; 3];
                o[axis] = s as i32 - 2;
                add(o, w / (12.0 * h * h));
            }
        }
        for (s1, w1) in c1.iter().enumerate() {
            for (s2, w2) in c1.iter().enumerate() {
                let mut o = [0i32; 3];
                o[i] = s1 as i32 - 2;
                o[j] = s2 as i32 - 2;
                add(o, -w1 * w2 / (144.0 * h * h));
            }
        }
    }
    acc.into_iter().filter(|(_, w)| *w != 0.0).collect()
}

/// Full static tensor Gamma_{ij,lm}(r1, r2): the operators
/// (delta Lap - dd) applied in r1 and r2 to the scalar core, by 4th-order
/// centered finite differences with spacings h1 and h2. Indexing:
/// result[i][j][(l, m)].
pub fn gamma_position_tensor(
    r1: &Vector3<f64>,
    r2: &Vector3<f64>,
    c: f64,
    h1: f64,
    h2: f64,
) -> Result<[[Matrix3<f64>; 3]; 3]> {
    let mut cache: std::collections::BTreeMap<([i32; 3], [i32; 3]), f64> =
        std::collections::BTreeMap::new();
    let mut value = |o1: [i32; 3], o2: [i32; 3]| -> Result<f64> {
        if let Some(v) = cache.get(&(o1, o2)) {
            return Ok(*v);
        }
        let x1 = r1 + Vector3::new(o1[0] as f64, o1[1] as f64, o1[2] as f64) * h1;
        let x2 = r2 + Vector3::new(o2[0] as f64, o2[1] as f64, o2[2] as f64) * h2;
        let v = gamma_static_scalar(x1.norm(), x2.norm(), c)?;
        cache.insert((o1, o2), v);
        Ok(v)
    };
    let mut out = [[Matrix3::zeros(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let w1 = operator_stencil(i, j, h1);
            for l in 0..3 {
                for m in 0..3 {
                    let w2 = operator_stencil(l, m, h2);
                    let mut s = 0.0;
                    for (o1, a) in &w1 {
                        for (o2, b) in &w2 {
                            s += a * b * value(*o1, *o2)?;
                        }
                    }
                    out[i][j][(l, m)] = s;
                }
            }
        }
    }
    Ok(out)
}

/// Frobenius norm over all four indices.
pub fn tensor_norm(t: &[[Matrix3<f64>; 3]; 3]) -> f64 {
    t.iter()
        .flat_map(|row| row.iter())
        .map(|m| m.norm_squared())
        .sum::<f64>()
        .sqrt()
}

/// Real permittivity change sampled on the lattice sites.
#[derive(Debug, Clone)]
pub struct PerturbationProfile {
    /// delta eps at site (i, j, k), flattened as (i*M + j)*M + k.
    pub samples: Vec<f64>,
    pub m_sites: usize,
    pub compact_support: bool,
    /// Set when max |delta eps| exceeds 10% of the background eps;
    /// first-order results are then only qualitative.
    pub smallness_warning: bool,
}

impl PerturbationProfile {
    pub fn new(lattice: &LatticeConfig, samples: Vec<f64>) -> Result<Self> {
        let m = lattice.m_sites;
        let expected = m * m * m;
        if samples.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: samples.len(),
            });
        }
        let max = samples.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        let ratio = max / lattice.eps;
        if ratio > 0.5 {
            return Err(Error::PerturbationTooLarge { ratio });
        }
        let nonzero = samples.iter().filter(|x| **x != 0.0).count();
        Ok(Self {
            samples,
            m_sites: m,
            compact_support: nonzero < expected,
            smallness_warning: ratio > 0.1,
        })
    }

    pub fn constant(lattice: &LatticeConfig, value: f64) -> Result<Self> {
        let m = lattice.m_sites;
        Self::new(lattice, vec![value; m * m * m])
    }

    pub fn point(lattice: &LatticeConfig, site: [usize; 3], value: f64) -> Result<Self> {
        let m = lattice.m_sites;
        let mut samples = vec![0.0; m * m * m];
        samples[(site[0] * m + site[1]) * m + site[2]] = value;
        Self::new(lattice, samples)
    }

    /// Integral of delta eps over the box (cell-volume weighted sum).
    pub fn integral(&self, lattice: &LatticeConfig) -> f64 {
        self.samples.iter().sum::<f64>() * lattice.cell_volume()
    }
}

/// Discrete Fourier transform of the samples, axis by axis, with the
/// continuum normalization f~(k) = V_cell sum_r f(r) e^{-ik.r}.
fn dft3(samples: &[f64], m: usize, cell_volume: f64) -> Vec<C64> {
    let mut data: Vec<C64> = samples.iter().map(|x| C64::new(*x, 0.0)).collect();
    let twiddle: Vec<C64> = (0..m * m)
        .map(|p| C64::from_polar(1.0, -2.0 * PI * p as f64 / m as f64))
        .collect();
    let mut line = vec![C64::new(0.0, 0.0); m];
    for axis in 0..3 {
        let stride = match axis {
            0 => m * m,
            1 => m,
            _ => 1,
        };
        for outer in 0..m * m {
            // base index of this line through the cube
            let (a, b) = (outer / m, outer % m);
            let base = match axis {
                0 => a * m + b,
                1 => a * m * m + b,
                _ => a * m * m + b * m,
            };
            for (f, l) in line.iter_mut().enumerate() {
                let mut s = C64::new(0.0, 0.0);
                for x in 0..m {
                    s += data[base + x * stride] * twiddle[(f * x) % m];
                }
                *l = s;
            }
            for (x, l) in line.iter().enumerate() {
                data[base + x * stride] = *l;
            }
        }
    }
    for v in data.iter_mut() {
        *v *= cell_volume;
    }
    data
}

/// Lazily evaluated first-order kernel change
/// dK~(k1, k2, t) = e^{-ic|k1|t} Gamma~(k1, k2) deps~(k1 - k2) e^{-ic|k2|t}.
#[derive(Debug, Clone)]
pub struct DeltaKernel {
    lattice: LatticeConfig,
    pub t: f64,
    eps_ft: Vec<C64>,
}

pub fn delta_kernel(
    profile: &PerturbationProfile,
    lattice: &LatticeConfig,
    t: f64,
) -> Result<DeltaKernel> {
    if profile.m_sites != lattice.m_sites {
        return Err(Error::Dimension {
            expected: lattice.m_sites,
            got: profile.m_sites,
        });
    }
    Ok(DeltaKernel {
        lattice: lattice.clone(),
        t,
        eps_ft: dft3(&profile.samples, profile.m_sites, lattice.cell_volume()),
    })
}

impl DeltaKernel {
    /// Fourier coefficient of the profile at integer mode n (periodic).
    pub fn eps_fourier(&self, n: [i32; 3]) -> C64 {
        let m = self.lattice.m_sites as i32;
        let wrap = |x: i32| ((x % m) + m) % m;
        let (i, j, k) = (wrap(n[0]) as usize, wrap(n[1]) as usize, wrap(n[2]) as usize);
        let m = self.lattice.m_sites;
        self.eps_ft[(i * m + j) * m + k]
    }

    pub fn eval(&self, n1: [i32; 3], n2: [i32; 3]) -> Result<Matrix3<C64>> {
        let k1 = self.lattice.wave_vector(n1);
        let k2 = self.lattice.wave_vector(n2);
        let c = self.lattice.light_speed();
        let gamma = gamma_momentum(&k1, &k2, c)?;
        let diff = [n1[0] - n2[0], n1[1] - n2[1], n1[2] - n2[2]];
        let phase = C64::from_polar(1.0, -c * (k1.norm() + k2.norm()) * self.t);
        let scale = self.eps_fourier(diff) * phase;
        Ok(gamma.map(|x| scale * x))
    }
}

/// First-order vacuum-energy shift for a static profile:
/// -(1/(2V)) (deps~(0)/eps) sum over 0 < |k| < k_max of hbar c |k|.
pub fn vacuum_energy_shift(
    profile: &PerturbationProfile,
    lattice: &LatticeConfig,
    k_max: f64,
) -> Result<f64> {
    let lattice = lattice.clone().with_cutoff(k_max)?;
    let c = lattice.light_speed();
    let sum: f64 = lattice
        .modes_in_cutoff()
        .iter()
        .map(|n| lattice.hbar * c * lattice.wave_vector(*n).norm())
        .sum();
    Ok(-0.5 * profile.integral(&lattice) / lattice.eps * sum / lattice.volume())
}
