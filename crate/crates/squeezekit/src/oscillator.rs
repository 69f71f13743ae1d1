//! Gaussian states of an N-dimensional harmonic oscillator: ground state,
//! energies, correlations, and perturbative energy shifts.
//!
//! The Hamiltonian is H = (1/2)(g^{ij} p_i p_j + u_{ij} x^i x^j) with g and
//! u symmetric positive definite. After normalization g = delta/m and the
//! ground-state kernel is the frequency matrix Omega solving m^2 Omega g
//! Omega = u.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, check_symmetric, imag_part, inverse_c, lift, real_part, spd_eig, symmetrize, to_complex,
    CMat, RMat, RVec, SymEig, SYM_TOL,
};
use crate::uncertainty::CorrelationMatrix;

/// Hamiltonian data of an N-mode oscillator.
#[derive(Debug, Clone)]
pub struct OscillatorSystem {
    pub n_modes: usize,
    pub mass: f64,
    pub g: RMat,
    pub u: RMat,
    pub hbar: f64,
}

impl OscillatorSystem {
    pub fn new(mass: f64, g: RMat, u: RMat, hbar: f64) -> Result<Self> {
        if mass <= 0.0 {
            return Err(Error::InvalidParameter {
                key: "mass".into(),
                reason: format!("must be positive, got {mass}"),
            });
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidParameter {
                key: "hbar".into(),
                reason: format!("must be positive, got {hbar}"),
            });
        }
        let n = g.nrows();
        if g.ncols() != n || u.nrows() != n || u.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: u.nrows(),
            });
        }
        spd_eig("g", &g)?;
        spd_eig("u", &u)?;
        Ok(Self {
            n_modes: n,
            mass,
            g: symmetrize(&g),
            u: symmetrize(&u),
            hbar,
        })
    }

    /// System with g already in normal form delta/m.
    pub fn standard(mass: f64, u: RMat, hbar: f64) -> Result<Self> {
        let n = u.nrows();
        Self::new(mass, RMat::identity(n, n) / mass, u, hbar)
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.n_modes;
        (&self.g - RMat::identity(n, n) / self.mass).norm() <= SYM_TOL * self.g.norm().max(1.0)
    }

    fn require_normalized(&self) -> Result<()> {
        if !self.is_normalized() {
            return Err(Error::InvalidParameter {
                key: "g".into(),
                reason: "system must be normalized to g = delta/m first".into(),
            });
        }
        Ok(())
    }
}

/// Symmetric positive solution Omega of m^2 Omega g Omega = u, with its
/// eigendecomposition kept for matrix functions.
#[derive(Debug, Clone)]
pub struct FrequencyMatrix {
    pub omega: RMat,
    pub eig: SymEig,
}

impl FrequencyMatrix {
    pub fn new(omega: RMat) -> Result<Self> {
        let eig = spd_eig("Omega", &omega)?;
        Ok(Self { omega, eig })
    }

    /// sin(Omega t)/Omega, evaluated spectrally as t*sinc(w t).
    pub fn sinc(&self, t: f64) -> RMat {
        self.eig.apply(|w| {
            if (w * t).abs() < 1e-30 {
                t
            } else {
                (w * t).sin() / w
            }
        })
    }

    pub fn cos(&self, t: f64) -> RMat {
        self.eig.apply(|w| (w * t).cos())
    }

    pub fn sin(&self, t: f64) -> RMat {
        self.eig.apply(|w| (w * t).sin())
    }

    /// exp(-i Omega t) as a complex matrix.
    pub fn exp_neg_i(&self, t: f64) -> CMat {
        let c = self.cos(t);
        let s = -self.sin(t);
        to_complex(&c, &s)
    }

    pub fn inverse(&self) -> RMat {
        self.eig.inverse()
    }
}

/// Normalized Gaussian wave function: center (xi, pi) and kernel K = a + ib.
#[derive(Debug, Clone)]
pub struct GaussianState {
    pub xi: RVec,
    pub pi: RVec,
    pub a: RMat,
    pub b: RMat,
    pub hbar: f64,
    pub mass: f64,
}

/// Real and imaginary parts of K^{-1}.
#[derive(Debug, Clone)]
pub struct MomentumKernel {
    pub c: RMat,
    pub d: RMat,
}

impl GaussianState {
    pub fn new(xi: RVec, pi: RVec, a: RMat, b: RMat, hbar: f64, mass: f64) -> Result<Self> {
        let n = a.nrows();
        if xi.len() != n || pi.len() != n || b.nrows() != n || b.ncols() != n || a.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                got: xi.len(),
            });
        }
        spd_eig("a", &a)?;
        check_symmetric("b", &b, SYM_TOL)?;
        Ok(Self {
            xi,
            pi,
            a: symmetrize(&a),
            b: symmetrize(&b),
            hbar,
            mass,
        })
    }

    pub fn n_modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn kernel(&self) -> CMat {
        to_complex(&self.a, &self.b)
    }

    /// psi(x), normalization and phase convention included.
    pub fn amplitude(&self, x: &RVec) -> C64 {
        let n = self.n_modes() as f64;
        let det_a = spd_eig("a", &self.a).expect("state invariant").log_det().exp();
        let norm = det_a.powf(0.25) * (self.mass / (std::f64::consts::PI * self.hbar)).powf(n / 4.0);
        let dx = x - &self.xi;
        let dxc = dx.map(|v| C64::new(v, 0.0));
        let quad = (dxc.transpose() * self.kernel() * &dxc)[(0, 0)];
        let phase = -self.xi.dot(&self.pi) / (2.0 * self.hbar) + self.pi.dot(x) / self.hbar;
        C64::new(norm, 0.0)
            * (C64::new(0.0, phase) - quad * C64::new(self.mass / (2.0 * self.hbar), 0.0)).exp()
    }

    /// phi(p), the unitary Fourier transform of `amplitude`, built from
    /// K^{-1} = c + id. The prefactor carries Det(K)^{-1/2}; its branch is
    /// fixed through K = a^{1/2}(I + iS)a^{1/2} with S = a^{-1/2} b a^{-1/2},
    /// so each eigenvalue contributes an unambiguous arctan phase.
    pub fn momentum_amplitude(&self, p: &RVec) -> Result<C64> {
        let kinv = self.momentum_kernel()?;
        let n = self.n_modes() as f64;
        let a_eig = spd_eig("a", &self.a)?;
        let a_isqrt = a_eig.apply(|w| w.powf(-0.5));
        let s = symmetrize(&(&a_isqrt * &self.b * &a_isqrt));
        let lam = crate::linalg::SymEig::new("S", &s)?.vals;
        let log_mag: f64 = -0.25 * a_eig.log_det()
            - 0.25 * lam.iter().map(|l| (1.0 + l * l).ln()).sum::<f64>();
        let det_phase: f64 = -0.5 * lam.iter().map(|l| l.atan()).sum::<f64>();
        let norm = log_mag.exp()
            * (std::f64::consts::PI * self.hbar * self.mass).powf(-n / 4.0);
        let dp = p - &self.pi;
        let dpc = dp.map(|v| C64::new(v, 0.0));
        let quad = (dpc.transpose() * to_complex(&kinv.c, &kinv.d) * &dpc)[(0, 0)];
        let phase =
            self.xi.dot(&self.pi) / (2.0 * self.hbar) - self.xi.dot(p) / self.hbar + det_phase;
        Ok(C64::new(norm, 0.0)
            * (C64::new(0.0, phase) - quad / C64::new(2.0 * self.mass * self.hbar, 0.0)).exp())
    }

    /// c + id = (a + ib)^{-1}, solved as a guarded complex inverse.
    pub fn momentum_kernel(&self) -> Result<MomentumKernel> {
        let kinv = inverse_c("K", &self.kernel())?;
        Ok(MomentumKernel {
            c: symmetrize(&real_part(&kinv)),
            d: symmetrize(&imag_part(&kinv)),
        })
    }

    /// Second moments about the center: <xx> = (hbar/2m) a^{-1},
    /// <pp> = (hbar m/2)(a + b a^{-1} b), sym<xp> = -(hbar/2) a^{-1} b.
    pub fn correlations(&self) -> CorrelationMatrix {
        let ai = spd_eig("a", &self.a).expect("state invariant").inverse();
        let xx = &ai * (self.hbar / (2.0 * self.mass));
        let pp = (&self.a + &self.b * &ai * &self.b) * (self.hbar * self.mass / 2.0);
        let xp = -(&ai * &self.b) * (self.hbar / 2.0);
        CorrelationMatrix::from_blocks(&xx, &pp, &xp)
    }
}

/// Reconstruct K = a + ib from the second moments:
/// K = -i <xx>^{-1} <x p> / m with <x p> = (i hbar/2) I + sym<xp>.
pub fn kernel_from_correlations(q: &CorrelationMatrix, mass: f64, hbar: f64) -> Result<CMat> {
    let n = q.n_modes();
    let xx = q.xx();
    let xp = q.xp();
    let xx_inv = lift(&spd_eig("<xx>", &xx)?.inverse());
    let full_xp = lift(&xp) + CMat::identity(n, n) * C64::new(0.0, hbar / 2.0);
    let k = xx_inv * full_xp * C64::new(0.0, -1.0 / mass);
    Ok(linalg::symmetrize_c(&k))
}

/// Congruence transform bringing g to delta/m. Returns the normalized
/// system and the change-of-basis matrix T: old coordinates x = T x',
/// old momenta p = T^{-T} p', so u' = T^T u T and g' = T^{-1} g T^{-T}.
pub fn normalize_system(sys: &OscillatorSystem) -> Result<(OscillatorSystem, RMat)> {
    let g_eig = spd_eig("g", &sys.g)?;
    // T = (m g)^{1/2}, the symmetric choice.
    let t = g_eig.apply(|w| (sys.mass * w).sqrt());
    let u_new = symmetrize(&(t.transpose() * &sys.u * &t));
    let n = sys.n_modes;
    let normalized = OscillatorSystem {
        n_modes: n,
        mass: sys.mass,
        g: RMat::identity(n, n) / sys.mass,
        u: u_new,
        hbar: sys.hbar,
    };
    spd_eig("u'", &normalized.u)?;
    Ok((normalized, t))
}

/// Omega = sqrt(u/m) for a normalized system (g = delta/m).
pub fn solve_frequency(sys: &OscillatorSystem) -> Result<FrequencyMatrix> {
    sys.require_normalized()?;
    let u_eig = spd_eig("u", &sys.u)?;
    let omega = u_eig.apply(|w| (w / sys.mass).sqrt());
    let eig = spd_eig("Omega", &omega)?;
    Ok(FrequencyMatrix { omega, eig })
}

/// Ground state: xi = pi = 0, K = Omega.
pub fn ground_state(sys: &OscillatorSystem) -> Result<GaussianState> {
    let freq = solve_frequency(sys)?;
    let n = sys.n_modes;
    GaussianState::new(
        RVec::zeros(n),
        RVec::zeros(n),
        freq.omega,
        RMat::zeros(n, n),
        sys.hbar,
        sys.mass,
    )
}

/// (E_cm, E_int): center-of-mass energy plus the internal (kernel) energy
/// E_int = (hbar/4) Tr{m g b a^{-1} b + m g a + u a^{-1}/m}.
pub fn energy(state: &GaussianState, sys: &OscillatorSystem) -> Result<(f64, f64)> {
    let e_cm = 0.5 * (state.pi.transpose() * &sys.g * &state.pi)[(0, 0)]
        + 0.5 * (state.xi.transpose() * &sys.u * &state.xi)[(0, 0)];
    let ai = spd_eig("a", &state.a)?.inverse();
    let m = state.mass;
    let t = &sys.g * &state.b * &ai * &state.b * m
        + &sys.g * &state.a * m
        + &sys.u * &ai / m;
    let e_int = state.hbar / 4.0 * t.trace();
    Ok((e_cm, e_int))
}

/// E_int in the momentum form (hbar/4) Tr{u d c^{-1} d/m + u c/m + m g c^{-1}}.
pub fn energy_momentum_form(state: &GaussianState, sys: &OscillatorSystem) -> Result<f64> {
    let mk = state.momentum_kernel()?;
    let ci = spd_eig("c", &mk.c)?.inverse();
    let m = state.mass;
    let t = &sys.u * &mk.d * &ci * &mk.d / m + &sys.u * &mk.c / m + &sys.g * &ci * m;
    Ok(state.hbar / 4.0 * t.trace())
}

/// First variation of E_int with respect to a (coefficient matrix of
/// delta a), and the second variation evaluated on supplied directions.
pub fn stationarity_audit(
    state: &GaussianState,
    sys: &OscillatorSystem,
    delta_a: &RMat,
    delta_b: &RMat,
) -> Result<(RMat, f64)> {
    sys.require_normalized()?;
    check_symmetric("delta_a", delta_a, SYM_TOL)?;
    check_symmetric("delta_b", delta_b, SYM_TOL)?;
    let ai = spd_eig("a", &state.a)?.inverse();
    let m = state.mass;
    let n = sys.n_modes;
    let first = symmetrize(
        &((RMat::identity(n, n) - &ai * &sys.u * &ai / m) * (state.hbar / 4.0)),
    );
    let omega_inv = solve_frequency(sys)?.inverse();
    let second = state.hbar / 2.0
        * ((delta_b * &omega_inv * delta_b).trace() + (delta_a * &omega_inv * delta_a).trace());
    Ok((first, second))
}

/// Ground-energy response (hbar/4) Tr{m dg a + du a^{-1}/m} at the ground
/// state, the oscillator analog of the Feynman-Hellmann theorem.
pub fn hellmann_feynman_shift(sys: &OscillatorSystem, dg: &RMat, du: &RMat) -> Result<f64> {
    check_symmetric("delta_g", dg, SYM_TOL)?;
    check_symmetric("delta_u", du, SYM_TOL)?;
    let gs = ground_state(sys)?;
    let ai = spd_eig("a", &gs.a)?.inverse();
    let t = dg * &gs.a * sys.mass + du * &ai / sys.mass;
    Ok(sys.hbar / 4.0 * t.trace())
}

/// Deterministic random inputs for sweeps and tests.
pub mod sample {
    use super::*;
    use rand::Rng;

    /// Random symmetric positive-definite matrix M = R R^T + eps I.
    pub fn spd(n: usize, rng: &mut impl Rng) -> RMat {
        let r = RMat::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        &r * r.transpose() + RMat::identity(n, n) * 0.5
    }

    pub fn symmetric(n: usize, rng: &mut impl Rng) -> RMat {
        let r = RMat::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        symmetrize(&r)
    }

    /// Random normalized system with g = delta/m.
    pub fn system(n: usize, mass: f64, hbar: f64, rng: &mut impl Rng) -> OscillatorSystem {
        OscillatorSystem::standard(mass, spd(n, rng), hbar).expect("spd potential")
    }

    /// Random squeezed state with a ~ SPD, b symmetric, shifted center.
    pub fn state(n: usize, hbar: f64, mass: f64, rng: &mut impl Rng) -> GaussianState {
        let a = spd(n, rng);
        let b = symmetric(n, rng);
        let xi = RVec::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        let pi = RVec::from_fn(n, |_, _| rng.gen_range(-1.0..1.0));
        GaussianState::new(xi, pi, a, b, hbar, mass).expect("valid sample")
    }
}
