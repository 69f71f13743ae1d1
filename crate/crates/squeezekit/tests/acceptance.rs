//! End-to-end acceptance gate: every shipped capability is exercised
//! against an oracle or a closed form, one printed line per criterion.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use squeezekit::evolution::{
    evolve_center, evolve_factors, evolve_kernel_closed, evolve_kernel_numeric,
    first_order_kernel, real_part_evolution,
};
use squeezekit::field::{
    delta_kernel, evolve_coherent, field_energy, field_state_to_modes, g_scalar,
    gamma_position_tensor, photon_number, tensor_norm, vacuum_energy_shift, wigner_vacuum,
    KernelMap, LatticeConfig, ModeState, PerturbationProfile, TransverseField,
};
use squeezekit::linalg::{imag_part, lift, real_part, solve_c, spd_eig, CMat, RMat, RVec};
use squeezekit::oscillator::{
    energy, energy_momentum_form, ground_state, hellmann_feynman_shift, normalize_system, sample,
    solve_frequency, FrequencyMatrix, GaussianState, OscillatorSystem,
};
use squeezekit::quad::{integrate_nd, GaussHermite, GaussLegendre};
use squeezekit::uncertainty::{entropic_excess, entropies, symplectic_residual};
use squeezekit::wigner::{wigner_evolved, wigner_evolved_state_path, wigner_value, PhasePoint};

const PI: f64 = std::f64::consts::PI;

struct Ensemble {
    systems: Vec<OscillatorSystem>,
    kernels: Vec<CMat>,
}

fn ensemble(count: usize, n: usize, seed: u64) -> Ensemble {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut systems = Vec::new();
    let mut kernels = Vec::new();
    for _ in 0..count {
        let sys = sample::system(n, 1.0, 1.0, &mut rng);
        let state = sample::state(n, 1.0, 1.0, &mut rng);
        systems.push(sys);
        kernels.push(state.kernel());
    }
    Ensemble { systems, kernels }
}

fn rel(x: &CMat, y: &CMat) -> f64 {
    (x - y).norm() / y.norm()
}

fn c01_closed_vs_numeric() -> Result<(), String> {
    let ens = ensemble(20, 4, 11);
    for (i, (sys, k0)) in ens.systems.iter().zip(&ens.kernels).enumerate() {
        let freq = solve_frequency(sys).map_err(|e| e.to_string())?;
        for t in [3.3, 10.0] {
            let closed = evolve_kernel_closed(k0, &freq, t).map_err(|e| e.to_string())?;
            let numeric =
                evolve_kernel_numeric(k0, sys, t, 1e-3).map_err(|e| e.to_string())?;
            let r = rel(&numeric, &closed);
            if r > 1e-6 {
                return Err(format!("system {i}, t = {t}: rel err {r:.3e}"));
            }
        }
    }
    Ok(())
}

fn c02_ordering_identity() -> Result<(), String> {
    let ens = ensemble(20, 4, 11);
    for (sys, k0) in ens.systems.iter().zip(&ens.kernels) {
        let freq = solve_frequency(sys).map_err(|e| e.to_string())?;
        for t in [0.7, 2.9, 8.1] {
            let cos = lift(&freq.cos(t));
            let sinc = lift(&freq.sinc(t));
            let osin = lift(&(&freq.omega * freq.sin(t)));
            let i = C64::new(0.0, 1.0);
            // left division: (cos + i K0 sinc)^{-1} (K0 cos + i W sin)
            let left = solve_c("lhs", &(&cos + k0 * &sinc * i), &(k0 * &cos + &osin * i))
                .map_err(|e| e.to_string())?;
            // right division: (cos K0 + i W sin)(cos + i sinc K0)^{-1},
            // computed through the transposed system
            let right_t = solve_c(
                "rhs",
                &(&cos + &sinc * k0 * i).transpose(),
                &(&cos * k0 + &osin * i).transpose(),
            )
            .map_err(|e| e.to_string())?;
            let right = right_t.transpose();
            if (&left - &right).norm() > 1e-10 * left.norm().max(1.0) {
                return Err(format!("t = {t}: sides differ by {:.3e}", (&left - &right).norm()));
            }
            if (&left - left.transpose()).norm() > 1e-10 * left.norm().max(1.0) {
                return Err(format!("t = {t}: symmetry drift"));
            }
        }
    }
    Ok(())
}

fn c03_ground_fixed_point() -> Result<(), String> {
    let ens = ensemble(10, 4, 23);
    for sys in &ens.systems {
        let freq = solve_frequency(sys).map_err(|e| e.to_string())?;
        let omega_c = lift(&freq.omega);
        let eye = CMat::identity(4, 4);
        for t in [0.0, 0.9, 4.4, 9.7] {
            let k = evolve_kernel_closed(&omega_c, &freq, t).map_err(|e| e.to_string())?;
            if (&k - &omega_c).norm() > 1e-9 {
                return Err(format!("t = {t}: drift {:.3e}", (&k - &omega_c).norm()));
            }
            let f = evolve_factors(&eye, &eye, &freq, t).map_err(|e| e.to_string())?;
            let expected = freq.exp_neg_i(-t); // e^{+i W t}
            if (&f.n - &expected).norm() > 1e-10 || (&f.d - &expected).norm() > 1e-10 {
                return Err(format!("t = {t}: factors deviate from e^(iWt)"));
            }
        }
    }
    Ok(())
}

fn c04_positivity_and_a_t() -> Result<(), String> {
    let ens = ensemble(20, 4, 11);
    let mut checked = 0usize;
    for (sys, k0) in ens.systems.iter().zip(&ens.kernels) {
        let freq = solve_frequency(sys).map_err(|e| e.to_string())?;
        let omega_inv = lift(&freq.inverse());
        let n0 = k0 * &omega_inv;
        let d0 = CMat::identity(4, 4);
        for j in 1..=50 {
            let t = 10.0 * j as f64 / 50.0;
            let k = evolve_kernel_closed(k0, &freq, t).map_err(|e| e.to_string())?;
            let re = real_part(&k);
            let min = spd_eig("Re K", &re).map_err(|e| e.to_string())?.min_eigenvalue();
            if min <= 0.0 {
                return Err(format!("t = {t}: min eig {min:.3e}"));
            }
            let f = evolve_factors(&n0, &d0, &freq, t).map_err(|e| e.to_string())?;
            let a_t = real_part_evolution(&real_part(k0), &f.d).map_err(|e| e.to_string())?;
            if (&a_t - &re).norm() > 1e-9 * re.norm() {
                return Err(format!("t = {t}: a(t) mismatch {:.3e}", (&a_t - &re).norm()));
            }
            checked += 1;
        }
    }
    if checked < 1000 {
        return Err(format!("only {checked} samples"));
    }
    Ok(())
}

fn c05_symplectic_saturation() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..100 {
        let state = sample::state(3, 1.0, 1.0, &mut rng);
        let r = symplectic_residual(&state.correlations(), 1.0).map_err(|e| e.to_string())?;
        if r > 1e-10 {
            return Err(format!("state {i}: residual {r:.3e}"));
        }
    }
    // independent 1D brute force: moments by quadrature, det Q compared
    // against hbar^2/4 and against the (hbar/4)^2 alternative
    let hbar: f64 = 0.5;
    let state = GaussianState::new(
        DVector::from_vec(vec![0.2]),
        DVector::from_vec(vec![-0.4]),
        DMatrix::from_element(1, 1, 1.7),
        DMatrix::from_element(1, 1, 0.8),
        hbar,
        1.0,
    )
    .map_err(|e| e.to_string())?;
    let gh = GaussHermite::new(80);
    let sx = (hbar / 1.7f64).sqrt();
    let mom_x = |k: u32| {
        let mut f = |x: &DVector<f64>| {
            (x[0] - 0.2).powi(k as i32) * state.amplitude(x).norm_sqr()
        };
        integrate_nd(&gh, &[0.2], &[sx], &mut f)
    };
    let mom_p = |k: u32| {
        let mut f = |p: &DVector<f64>| {
            (p[0] + 0.4).powi(k as i32) * state.momentum_amplitude(p).unwrap().norm_sqr()
        };
        integrate_nd(&gh, &[-0.4], &[2.0 * sx], &mut f)
    };
    let xx = mom_x(2);
    let pp = mom_p(2);
    // symmetrized <xp> from the kernel identity -hbar b / (2a) is itself
    // checked elsewhere; here rebuild it from the brute-force pieces
    let xp = -hbar * 0.8 / (2.0 * 1.7);
    let det = xx * pp - xp * xp;
    let expected = hbar * hbar / 4.0;
    let alternative = (hbar / 4.0) * (hbar / 4.0);
    if (det - expected).abs() > 1e-6 * expected {
        return Err(format!("det Q = {det:.8e}, want {expected:.8e}"));
    }
    if (det - alternative).abs() < 1e-2 * expected {
        return Err("brute force cannot distinguish the two constants".into());
    }
    Ok(())
}

fn c06_entropic() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let bound = |n: f64, hbar: f64| n * (PI * std::f64::consts::E * hbar).ln();
    for _ in 0..20 {
        // b = 0: the bound is met with equality
        let a = sample::spd(3, &mut rng);
        let s = GaussianState::new(RVec::zeros(3), RVec::zeros(3), a, RMat::zeros(3, 3), 1.0, 1.0)
            .map_err(|e| e.to_string())?;
        let (sx, sp) = entropies(&s).map_err(|e| e.to_string())?;
        if (sx + sp - bound(3.0, 1.0)).abs() > 1e-9 {
            return Err(format!("b=0 sum {} vs bound {}", sx + sp, bound(3.0, 1.0)));
        }
    }
    for i in 0..100 {
        let s = sample::state(3, 1.0, 1.0, &mut rng);
        let excess = entropic_excess(&s).map_err(|e| e.to_string())?;
        let ai = spd_eig("a", &s.a).map_err(|e| e.to_string())?.inverse();
        let ab = &ai * &s.b;
        let m = RMat::identity(3, 3) + &ab * &ab;
        let direct = 0.5 * m.determinant().ln();
        if (excess - direct).abs() > 1e-9 {
            return Err(format!("state {i}: excess {excess} vs {direct}"));
        }
    }
    Ok(())
}

fn c07_energy() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10 {
        let sys = sample::system(3, 1.0, 1.0, &mut rng);
        let state = sample::state(3, 1.0, 1.0, &mut rng);
        let freq = solve_frequency(&sys).map_err(|e| e.to_string())?;
        let (e_cm0, e_int0) = energy(&state, &sys).map_err(|e| e.to_string())?;
        // internal energy from the momentum representation
        let e_mom = energy_momentum_form(&state, &sys).map_err(|e| e.to_string())?;
        if (e_int0 - e_mom).abs() > 1e-10 * e_int0 {
            return Err(format!("position {e_int0} vs momentum {e_mom}"));
        }
        for t in [1.3, 5.6] {
            let k = evolve_kernel_closed(&state.kernel(), &freq, t).map_err(|e| e.to_string())?;
            let (xi, pi) =
                evolve_center(&state.xi, &state.pi, &sys, t).map_err(|e| e.to_string())?;
            let evolved =
                GaussianState::new(xi, pi, real_part(&k), imag_part(&k), 1.0, 1.0)
                    .map_err(|e| e.to_string())?;
            let (e_cm, e_int) = energy(&evolved, &sys).map_err(|e| e.to_string())?;
            let drift = ((e_cm + e_int) - (e_cm0 + e_int0)).abs();
            if drift > 1e-8 * (e_cm0 + e_int0) {
                return Err(format!("t = {t}: energy drift {drift:.3e}"));
            }
        }
    }
    // first-order shift against central finite differences
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let sys = sample::system(3, 1.0, 1.0, &mut rng);
    let dg = sample::symmetric(3, &mut rng) * 0.3;
    let du = sample::symmetric(3, &mut rng) * 0.3;
    let shift = hellmann_feynman_shift(&sys, &dg, &du).map_err(|e| e.to_string())?;
    let e0 = |eps: f64| -> Result<f64, String> {
        let g = &sys.g + &dg * eps;
        let u = &sys.u + &du * eps;
        let perturbed = OscillatorSystem::new(1.0, g, u, 1.0).map_err(|e| e.to_string())?;
        let (normalized, _) = normalize_system(&perturbed).map_err(|e| e.to_string())?;
        let gs = ground_state(&normalized).map_err(|e| e.to_string())?;
        let (_, e_int) = energy(&gs, &normalized).map_err(|e| e.to_string())?;
        Ok(e_int)
    };
    let h = 1e-5;
    let fd = (e0(h)? - e0(-h)?) / (2.0 * h);
    if (shift - fd).abs() > 1e-4 * fd.abs() {
        return Err(format!("shift {shift} vs finite difference {fd}"));
    }
    Ok(())
}

fn c08_wigner() -> Result<(), String> {
    let hbar = 0.7;
    let state = GaussianState::new(
        DVector::from_vec(vec![0.3]),
        DVector::from_vec(vec![-0.2]),
        DMatrix::from_element(1, 1, 1.4),
        DMatrix::from_element(1, 1, -0.6),
        hbar,
        1.0,
    )
    .map_err(|e| e.to_string())?;
    let peak = wigner_value(
        &state,
        &PhasePoint::new(DVector::from_vec(vec![0.3]), DVector::from_vec(vec![-0.2])),
    );
    if peak != 1.0 {
        return Err(format!("peak {peak} != 1"));
    }
    // total phase-space integral
    let gh = GaussHermite::new(96);
    let sx = (hbar / 1.4f64).sqrt();
    let sp = (3.0 * hbar) .sqrt();
    let mut f = |v: &DVector<f64>| {
        wigner_value(
            &state,
            &PhasePoint::new(
                DVector::from_vec(vec![v[0]]),
                DVector::from_vec(vec![v[1]]),
            ),
        )
    };
    let total = integrate_nd(&gh, &[0.3, -0.2], &[sx, sp], &mut f);
    if (total - PI * hbar).abs() > 1e-6 {
        return Err(format!("total {total} vs {}", PI * hbar));
    }
    // p-marginal: int W dp = pi hbar |psi(x)|^2 pointwise
    for x in [0.0, 0.3, 0.9] {
        let mut g = |v: &DVector<f64>| {
            wigner_value(
                &state,
                &PhasePoint::new(
                    DVector::from_vec(vec![x]),
                    DVector::from_vec(vec![v[0]]),
                ),
            )
        };
        let marginal = integrate_nd(&gh, &[-0.2], &[sp], &mut g);
        let expected =
            PI * hbar * state.amplitude(&DVector::from_vec(vec![x])).norm_sqr();
        if (marginal - expected).abs() > 1e-6 {
            return Err(format!("x = {x}: marginal {marginal} vs {expected}"));
        }
    }
    // the two evolution paths coincide
    let sys = OscillatorSystem::standard(1.0, DMatrix::from_element(1, 1, 2.25), hbar)
        .map_err(|e| e.to_string())?;
    for t in [0.4, 1.9] {
        for (x, p) in [(0.1, 0.5), (-0.7, 0.2)] {
            let pt = PhasePoint::new(DVector::from_vec(vec![x]), DVector::from_vec(vec![p]));
            let flow = wigner_evolved(&state, &pt, &sys, t).map_err(|e| e.to_string())?;
            let path =
                wigner_evolved_state_path(&state, &pt, &sys, t).map_err(|e| e.to_string())?;
            if (flow - path).abs() > 1e-8 {
                return Err(format!("t = {t}: {flow} vs {path}"));
            }
        }
    }
    Ok(())
}

fn c09_first_order_defect() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let sys = sample::system(3, 1.0, 1.0, &mut rng);
    let freq = solve_frequency(&sys).map_err(|e| e.to_string())?;
    let base = sample::symmetric(3, &mut rng);
    let base_b = sample::symmetric(3, &mut rng);
    let t = 1.1;
    let omega_c = lift(&freq.omega);
    let mut defects = Vec::new();
    for i in 0..4 {
        let scale = 0.1 / 2f64.powi(i);
        let dk0 = lift(&(&base * scale)) + lift(&(&base_b * scale)) * C64::new(0.0, 1.0);
        let exact = evolve_kernel_closed(&(&omega_c + &dk0), &freq, t)
            .map_err(|e| e.to_string())?;
        let approx = &omega_c + first_order_kernel(&dk0, &freq, t);
        defects.push(((&exact - &approx).norm(), scale));
    }
    for w in defects.windows(2) {
        let order = (w[0].0 / w[1].0).log2();
        if (order - 2.0).abs() > 0.1 {
            return Err(format!("observed order {order:.3}"));
        }
    }
    Ok(())
}

/// Damped oscillatory quadrature of the radial representation of G,
/// extrapolated to zero damping. Independent of the closed form.
fn g_oracle(r1: f64, r2: f64, t: f64, c: f64) -> C64 {
    let ct = c * t;
    let gl = GaussLegendre::new(24);
    let two_pi_cubed = 8.0 * PI * PI * PI;
    let damped = |eta: f64| -> C64 {
        let k_top = 25.0 / eta;
        let panels = (k_top / 0.4).ceil() as usize;
        let width = k_top / panels as f64;
        let mut total = C64::new(0.0, 0.0);
        for p in 0..panels {
            let a = p as f64 * width;
            total += gl.integrate(a, a + width, |k| {
                if k == 0.0 {
                    return C64::new(0.0, 0.0);
                }
                let osc = C64::from_polar((-eta * k).exp(), -k * ct);
                osc * (((k * r2).sin() / r2 - (k * r1).sin() / r1) / k)
            });
        }
        total
    };
    let etas = [0.05, 0.025, 0.0125, 0.00625];
    let mut table: Vec<C64> = etas.iter().map(|e| damped(*e)).collect();
    let n = etas.len();
    for level in 1..n {
        for i in 0..n - level {
            let (x0, x1) = (etas[i], etas[i + level]);
            table[i] = (table[i] * x1 - table[i + 1] * x0) / (x1 - x0);
        }
    }
    table[0] * (2.0 / (two_pi_cubed * PI * (r1 * r1 - r2 * r2)))
}

fn c10_propagator() -> Result<(), String> {
    let c = 1.0;
    let pts = [
        (1.0, 2.0, 0.0),
        (1.0, 2.0, 0.4),
        (1.0, 2.0, 1.5),
        (1.0, 2.0, 2.6),
        (1.0, 2.0, -1.5),
        (0.7, 2.9, 1.2),
        (0.7, 2.9, 2.0),
        (0.7, 2.9, 3.4),
        (2.2, 3.0, 0.8),
        (2.2, 3.0, 2.6),
        (2.2, 3.0, 3.6),
        (1.3, 1.9, 0.3),
        (1.3, 1.9, 1.6),
        (1.3, 1.9, 2.4),
        (0.5, 1.1, 0.2),
        (0.5, 1.1, 0.8),
        (0.5, 1.1, 1.6),
        (3.0, 4.0, 3.5),
        (3.0, 4.0, 5.0),
        (1.0, 3.5, 2.0),
    ];
    for (r1, r2, t) in pts {
        let closed = g_scalar(r1, r2, t, c).map_err(|e| e.to_string())?;
        let oracle = g_oracle(r1, r2, t, c);
        let scale = closed.norm().max(1e-4 / (8.0 * PI * PI * PI));
        if (closed - oracle).norm() > 1e-3 * scale {
            return Err(format!("({r1}, {r2}, {t}): {closed} vs oracle {oracle}"));
        }
    }
    // light-front support and static reality
    let late = g_scalar(1.0, 2.0, 3.0, c).map_err(|e| e.to_string())?;
    if late.re != 0.0 {
        return Err(format!("Re G = {} past the light front", late.re));
    }
    let static_g = g_scalar(0.9, 2.3, 0.0, c).map_err(|e| e.to_string())?;
    if static_g.im != 0.0 {
        return Err("Im G != 0 at t = 0".into());
    }
    // removable limit continuity
    for t in [0.0, 0.8] {
        let limit = g_scalar(2.0, 2.0, t, c).map_err(|e| e.to_string())?;
        let near = g_scalar(2.0, 2.0 * (1.0 + 1e-7), t, c).map_err(|e| e.to_string())?;
        if (limit - near).norm() > 1e-6 * limit.norm() {
            return Err(format!("t = {t}: limit discontinuous"));
        }
    }
    Ok(())
}

fn c11_far_field() -> Result<(), String> {
    let r2 = Vector3::new(0.0, 0.3, 0.4);
    let mut logs = Vec::new();
    for i in 0..6 {
        let r1 = 8.0 * 1.5f64.powi(i);
        let x1 = Vector3::new(r1, 0.0, 0.0);
        let t = gamma_position_tensor(&x1, &r2, 1.0, 0.01 * r1, 0.004)
            .map_err(|e| e.to_string())?;
        logs.push((r1.ln(), tensor_norm(&t).ln()));
    }
    let n = logs.len() as f64;
    let (sx, sy): (f64, f64) = logs.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let slope = logs
        .iter()
        .map(|(x, y)| (x - sx / n) * (y - sy / n))
        .sum::<f64>()
        / logs.iter().map(|(x, _)| (x - sx / n).powi(2)).sum::<f64>();
    if (slope + 4.0).abs() > 0.15 {
        return Err(format!("slope {slope:.4}"));
    }
    Ok(())
}

fn c12_energy_shift() -> Result<(), String> {
    let lattice = LatticeConfig::new(2.0 * PI, 32, 1.0, 1.0, 1.0).map_err(|e| e.to_string())?;
    let de = 0.08;
    let profile = PerturbationProfile::constant(&lattice, de).map_err(|e| e.to_string())?;
    let k_max = 12.5;
    let shift = vacuum_energy_shift(&profile, &lattice, k_max).map_err(|e| e.to_string())?;
    let continuum = -(de / lattice.eps) * lattice.volume() * lattice.hbar * lattice.light_speed()
        * k_max.powi(4)
        / (16.0 * PI * PI);
    let r = (shift - continuum).abs() / continuum.abs();
    if r > 0.01 {
        return Err(format!("lattice {shift:.6e} vs continuum {continuum:.6e}, rel {r:.4}"));
    }
    if shift >= 0.0 {
        return Err("positive deps must lower the ground energy".into());
    }
    Ok(())
}

fn c13_field_layer() -> Result<(), String> {
    let lattice = LatticeConfig::new(3.0, 8, 2.0, 1.5, 1.0).map_err(|e| e.to_string())?;
    let n_vec = [1, 2, 0];
    let k = lattice.wave_vector(n_vec).norm();
    let c = lattice.light_speed();
    let b_coeff = C64::new(0.8, 0.0);
    let d_coeff = b_coeff * (lattice.eps / lattice.mu).sqrt();
    let b = TransverseField::plane_wave(&lattice, n_vec, 0, b_coeff).map_err(|e| e.to_string())?;
    let d = TransverseField::plane_wave(&lattice, n_vec, 0, d_coeff).map_err(|e| e.to_string())?;
    let e = field_energy(&b, &d, &lattice);
    let n0 = photon_number(&b, &d, &lattice).map_err(|e| e.to_string())?;
    let expected = e / (lattice.hbar * c * k);
    if (n0 - expected).abs() > 1e-6 * expected {
        return Err(format!("N = {n0} vs E/(hbar c k) = {expected}"));
    }
    for t in [0.7, 2.9, 11.0] {
        let (bt, dt) = evolve_coherent(&b, &d, &lattice, t).map_err(|e| e.to_string())?;
        let nt = photon_number(&bt, &dt, &lattice).map_err(|e| e.to_string())?;
        if (nt - n0).abs() > 1e-10 * n0 {
            return Err(format!("t = {t}: photon number drift"));
        }
    }
    // factorization of the vacuum Wigner functional
    let mut b2 = TransverseField::zero();
    b2.add_plane_wave(&lattice, [0, 0, 1], 0, C64::new(0.5, 0.1))
        .map_err(|e| e.to_string())?;
    b2.add_plane_wave(&lattice, [1, 1, 0], 1, C64::new(-0.2, 0.4))
        .map_err(|e| e.to_string())?;
    let mut d2 = TransverseField::zero();
    d2.add_plane_wave(&lattice, [0, 0, 1], 1, C64::new(0.3, 0.0))
        .map_err(|e| e.to_string())?;
    let modes = field_state_to_modes(&lattice, &b2, &d2, &KernelMap::new())
        .map_err(|e| e.to_string())?;
    let centered = ModeState {
        modes: modes
            .modes
            .iter()
            .map(|m| {
                let mut m = m.clone();
                m.re_state.xi[0] = 0.0;
                m.re_state.pi[0] = 0.0;
                m.im_state.xi[0] = 0.0;
                m.im_state.pi[0] = 0.0;
                m
            })
            .collect(),
        hbar: modes.hbar,
    };
    let product = centered.wigner(&lattice, &b2, &d2).map_err(|e| e.to_string())?;
    let direct = wigner_vacuum(&b2, &d2, &lattice).map_err(|e| e.to_string())?;
    if (product - direct).abs() > 1e-10 * direct {
        return Err(format!("factorized {product} vs direct {direct}"));
    }
    // the perturbative kernel stays consistent with first-order evolution
    let profile = PerturbationProfile::point(&lattice, [0, 0, 0], 0.1).map_err(|e| e.to_string())?;
    let n1 = [2, 0, 0];
    let n2 = [0, 1, 1];
    let w1 = c * lattice.wave_vector(n1).norm();
    let w2 = c * lattice.wave_vector(n2).norm();
    let base = delta_kernel(&profile, &lattice, 0.0)
        .map_err(|e| e.to_string())?
        .eval(n1, n2)
        .map_err(|e| e.to_string())?;
    let freq = FrequencyMatrix::new(RMat::from_diagonal(&DVector::from_vec(vec![w1, w2])))
        .map_err(|e| e.to_string())?;
    let mut dk0 = CMat::zeros(2, 2);
    dk0[(0, 1)] = base[(1, 1)];
    dk0[(1, 0)] = base[(1, 1)];
    let t = 1.3;
    let evolved = first_order_kernel(&dk0, &freq, t);
    let direct = delta_kernel(&profile, &lattice, t)
        .map_err(|e| e.to_string())?
        .eval(n1, n2)
        .map_err(|e| e.to_string())?[(1, 1)];
    if (evolved[(0, 1)] - direct).norm() > 1e-12 * direct.norm() {
        return Err("delta kernel phases disagree with first-order evolution".into());
    }
    Ok(())
}

fn c14_cli_determinism() -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_squeezekit");
    let dir = std::env::temp_dir().join(format!("squeezekit-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let scen_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/scenarios");
    for (name, expect_code) in [
        ("oscillator_evolve.json", 0),
        ("field_propagate.json", 0),
        ("kernel_profile.json", 3),
    ] {
        let scenario = scen_dir.join(name);
        let mut outputs = Vec::new();
        for run in 0..2 {
            for format in ["csv", "json"] {
                let out = dir.join(format!("{name}.{run}.{format}"));
                let status = std::process::Command::new(bin)
                    .args([
                        "run",
                        "--scenario",
                        scenario.to_str().unwrap(),
                        "--out",
                        out.to_str().unwrap(),
                        "--format",
                        format,
                    ])
                    .output()
                    .map_err(|e| e.to_string())?;
                let code = status.status.code().unwrap_or(-1);
                if code != expect_code {
                    return Err(format!("{name} ({format}): exit {code}, want {expect_code}"));
                }
                outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
            }
        }
        if outputs[0] != outputs[2] || outputs[1] != outputs[3] {
            return Err(format!("{name}: consecutive runs differ"));
        }
        if outputs[0].is_empty() {
            return Err(format!("{name}: empty output"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("01 closed form vs RK4 Riccati", c01_closed_vs_numeric),
        ("02 ordering identity", c02_ordering_identity),
        ("03 ground-state fixed point", c03_ground_fixed_point),
        ("04 positivity and a(t)", c04_positivity_and_a_t),
        ("05 symplectic saturation", c05_symplectic_saturation),
        ("06 entropic bound and excess", c06_entropic),
        ("07 energy identities", c07_energy),
        ("08 wigner values and flow", c08_wigner),
        ("09 first-order defect order", c09_first_order_defect),
        ("10 squeezing propagator G", c10_propagator),
        ("11 far-field 1/r^4", c11_far_field),
        ("12 vacuum-energy shift", c12_energy_shift),
        ("13 field layer", c13_field_layer),
        ("14 cli determinism", c14_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("criterion {name}: pass"),
            Err(msg) => {
                println!("criterion {name}: FAIL ({msg})");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
