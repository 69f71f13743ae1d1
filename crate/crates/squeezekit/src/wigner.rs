//! Wigner function of squeezed states in the pure-exponential
//! normalization: the peak value is exactly 1, so the total phase-space
//! mass is (pi hbar)^N rather than 1.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{imag_part, real_part, spd_eig, RVec};
use crate::oscillator::{GaussianState, OscillatorSystem};
use crate::quad::GaussHermite;

/// A point (x, p) in phase space.
#[derive(Debug, Clone)]
pub struct PhasePoint {
    pub x: RVec,
    pub p: RVec,
}

impl PhasePoint {
    pub fn new(x: RVec, p: RVec) -> Self {
        assert!(x.iter().chain(p.iter()).all(|v| v.is_finite()));
        Self { x, p }
    }
}

/// Closed-form Wigner value
/// W = exp[-(m/hbar) dx (a + b a^{-1} b) dx - dp a^{-1} dp/(m hbar)
///        - (2/hbar) dx (b a^{-1}) dp],
/// strictly positive with W(xi, pi) = 1.
pub fn wigner_value(state: &GaussianState, pt: &PhasePoint) -> f64 {
    let ai = spd_eig("a", &state.a).expect("state invariant").inverse();
    let dx = &pt.x - &state.xi;
    let dp = &pt.p - &state.pi;
    let m = state.mass;
    let h = state.hbar;
    let xx = (dx.transpose() * (&state.a + &state.b * &ai * &state.b) * &dx)[(0, 0)];
    let pp = (dp.transpose() * &ai * &dp)[(0, 0)];
    let xp = (dx.transpose() * (&state.b * &ai) * &dp)[(0, 0)];
    (-(m / h) * xx - pp / (m * h) - 2.0 / h * xp).exp()
}

/// Quadrature of the defining integral
/// W = 2^{-N} int d^N eta e^{i eta.p/hbar} psi(x - eta/2) psi*(x + eta/2),
/// the oracle path for `wigner_value`.
pub fn wigner_by_integral(
    state: &GaussianState,
    pt: &PhasePoint,
    nodes_per_axis: usize,
) -> Result<f64> {
    let n = state.n_modes();
    if n > 2 {
        return Err(Error::QuadratureNonConvergent(
            "integral oracle is desk-scale only (N <= 2)",
        ));
    }
    let gh = GaussHermite::new(nodes_per_axis);
    // |psi(x -/+ eta/2)| decays like exp(-m a_min eta^2 / (8 hbar)); pick the
    // Gaussian scale accordingly.
    let a_min = spd_eig("a", &state.a)?.min_eigenvalue();
    let scale = (4.0 * state.hbar / (state.mass * a_min)).sqrt();
    let centers = vec![0.0; n];
    let scales = vec![scale; n];
    let mut f = |eta: &DVector<f64>| -> f64 {
        let xm = &pt.x - eta * 0.5;
        let xp_ = &pt.x + eta * 0.5;
        let phase = C64::new(0.0, eta.dot(&pt.p) / state.hbar).exp();
        (phase * state.amplitude(&xm) * state.amplitude(&xp_).conj()).re
    };
    let val = crate::quad::integrate_nd(&gh, &centers, &scales, &mut f);
    Ok(val * 0.5_f64.powi(n as i32))
}

/// W(x, p, t) evaluated through the classical flow: the initial Wigner
/// function at the time-reversed phase point.
pub fn wigner_evolved(
    state: &GaussianState,
    pt: &PhasePoint,
    sys: &OscillatorSystem,
    t: f64,
) -> Result<f64> {
    let (x_back, p_back) = crate::evolution::evolve_center(&pt.x, &pt.p, sys, -t)?;
    Ok(wigner_value(state, &PhasePoint::new(x_back, p_back)))
}

/// The Schroedinger-path value: evolve the state (kernel and center) and
/// evaluate the closed form there. Equal to `wigner_evolved`.
pub fn wigner_evolved_state_path(
    state: &GaussianState,
    pt: &PhasePoint,
    sys: &OscillatorSystem,
    t: f64,
) -> Result<f64> {
    let freq = crate::oscillator::solve_frequency(sys)?;
    let k_t = crate::evolution::evolve_kernel_closed(&state.kernel(), &freq, t)?;
    let (xi_t, pi_t) = crate::evolution::evolve_center(&state.xi, &state.pi, sys, t)?;
    let evolved = GaussianState::new(
        xi_t,
        pi_t,
        real_part(&k_t),
        imag_part(&k_t),
        state.hbar,
        state.mass,
    )?;
    Ok(wigner_value(&evolved, pt))
}
