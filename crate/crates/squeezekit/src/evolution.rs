//! Time evolution of Gaussian states: classical center motion, the exact
//! closed-form kernel solution, its linearized N/D factors, direct RK4
//! integration of the matrix Riccati equation, and the first-order
//! perturbation formula.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{
    imag_part, lift, real_part, solve_c, spd_eig, symmetrize_c, CMat, RMat, RVec,
};
use crate::oscillator::{solve_frequency, FrequencyMatrix, OscillatorSystem};

/// The linear factors N(t), D(t) of the Riccati substitution
/// K = D^{-1} N Omega.
#[derive(Debug, Clone)]
pub struct EvolutionFactors {
    pub n: CMat,
    pub d: CMat,
}

/// Classical center motion in the Omega eigenbasis:
/// xi(t) = xi cos Wt + (pi/mW) sin Wt, pi(t) = pi cos Wt - mW xi sin Wt.
pub fn evolve_center(
    xi0: &RVec,
    pi0: &RVec,
    sys: &OscillatorSystem,
    t: f64,
) -> Result<(RVec, RVec)> {
    let freq = solve_frequency(sys)?;
    let m = sys.mass;
    let cos = freq.cos(t);
    let sin = freq.sin(t);
    let sinc = freq.sinc(t); // sin(Wt)/W
    let omega_sin = &freq.omega * &sin;
    let xi_t = &cos * xi0 + &sinc * pi0 / m;
    let pi_t = &cos * pi0 - omega_sin * xi0 * m;
    Ok((xi_t, pi_t))
}

/// Exact closed form
/// K(t) = (cos Wt + i K0 sin(Wt)/W)^{-1} (K0 cos Wt + i W sin Wt),
/// evaluated spectrally in the Omega eigenbasis.
pub fn evolve_kernel_closed(k0: &CMat, freq: &FrequencyMatrix, t: f64) -> Result<CMat> {
    let n = k0.nrows();
    if freq.omega.nrows() != n {
        return Err(Error::Dimension {
            expected: freq.omega.nrows(),
            got: n,
        });
    }
    let cos = lift(&freq.cos(t));
    let sinc = lift(&freq.sinc(t));
    let omega_sin = lift(&(&freq.omega * freq.sin(t)));
    let i = C64::new(0.0, 1.0);
    let lhs = &cos + k0 * &sinc * i;
    let rhs = k0 * &cos + omega_sin * i;
    let k_t = solve_c("resolvent", &lhs, &rhs)?;
    let k_t = symmetrize_c(&k_t);
    spd_eig("Re K(t)", &real_part(&k_t))?;
    Ok(k_t)
}

/// N(t) = N0 cos Wt + i D0 sin Wt, D(t) = D0 cos Wt + i N0 sin Wt.
pub fn evolve_factors(
    n0: &CMat,
    d0: &CMat,
    freq: &FrequencyMatrix,
    t: f64,
) -> Result<EvolutionFactors> {
    let cos = lift(&freq.cos(t));
    let sin = lift(&freq.sin(t));
    let i = C64::new(0.0, 1.0);
    Ok(EvolutionFactors {
        n: n0 * &cos + d0 * &sin * i,
        d: d0 * &cos + n0 * &sin * i,
    })
}

impl EvolutionFactors {
    /// Reconstruct K = D^{-1} N Omega.
    pub fn kernel(&self, freq: &FrequencyMatrix) -> Result<CMat> {
        let x = solve_c("D(t)", &self.d, &self.n)?;
        Ok(symmetrize_c(&(x * lift(&freq.omega))))
    }
}

/// a(t) = D^{-1}(t) a0 D^{dagger -1}(t); positivity is preserved.
pub fn real_part_evolution(a0: &RMat, d: &CMat) -> Result<RMat> {
    let n = a0.nrows();
    let d_inv = crate::linalg::inverse_c("D(t)", d)?;
    let a_t = &d_inv * lift(a0) * d_inv.adjoint();
    let a_t = crate::linalg::symmetrize(&real_part(&a_t));
    if imag_part(&(&d_inv * lift(a0) * d_inv.adjoint())).norm() > 1e-8 * a_t.norm().max(1.0) {
        return Err(Error::Singular("a(t) acquired an imaginary part"));
    }
    let _ = n;
    spd_eig("a(t)", &a_t)?;
    Ok(a_t)
}

/// Fixed-step RK4 integration of dK/dt = -i K m g K + i u/m with
/// symmetrization after every step.
pub fn evolve_kernel_numeric(
    k0: &CMat,
    sys: &OscillatorSystem,
    t: f64,
    dt: f64,
) -> Result<CMat> {
    let mg = lift(&(&sys.g * sys.mass));
    let u_over_m = lift(&(&sys.u / sys.mass));
    let i = C64::new(0.0, 1.0);
    let rhs = |k: &CMat| -> CMat { -(k * &mg * k) * i + &u_over_m * i };

    let steps = (t.abs() / dt).ceil().max(1.0) as usize;
    let h = t / steps as f64;
    let mut k = k0.clone();
    for step in 0..steps {
        let k1 = rhs(&k);
        let k2 = rhs(&(&k + &k1 * C64::new(h / 2.0, 0.0)));
        let k3 = rhs(&(&k + &k2 * C64::new(h / 2.0, 0.0)));
        let k4 = rhs(&(&k + &k3 * C64::new(h, 0.0)));
        k += (k1 + k2 * C64::new(2.0, 0.0) + k3 * C64::new(2.0, 0.0) + k4)
            * C64::new(h / 6.0, 0.0);
        k = symmetrize_c(&k);
        if spd_eig("Re K", &real_part(&k)).is_err() {
            return Err(Error::StepSize {
                t: (step + 1) as f64 * h,
            });
        }
    }
    Ok(k)
}

/// First-order kernel perturbation dK(t) = e^{-iWt} dK(0) e^{-iWt}.
pub fn first_order_kernel(dk0: &CMat, freq: &FrequencyMatrix, t: f64) -> CMat {
    let phase = freq.exp_neg_i(t);
    &phase * dk0 * &phase
}
