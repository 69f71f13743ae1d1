//! Scenario-driven front end: parse a JSON scenario, dispatch to the
//! library, emit a deterministic table as CSV or JSON.
//!
//! Exit codes: 0 success, 2 validation failure (nothing written), 3
//! completed with numerical-exclusion flags (output still written, every
//! flag listed).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::Error;
use crate::evolution::evolve_kernel_closed;
use crate::field::{
    evolve_coherent, field_energy, photon_number, vacuum_energy_shift, LatticeConfig,
    PerturbationProfile, TransverseField,
};
use crate::linalg::{imag_part, real_part, RMat, RVec};
use crate::oscillator::{
    ground_state, sample, solve_frequency, FrequencyMatrix, GaussianState, OscillatorSystem,
};
use crate::uncertainty::{entropic_excess, entropies, symplectic_residual};
use crate::wigner::{wigner_evolved, PhasePoint};

#[derive(Parser)]
#[command(name = "squeezekit", version, about = "squeezed-state scenario runner")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario and write the result table.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Seed for scenarios with randomized sweeps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse and validate a scenario without running it.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

fn default_one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
pub struct ModeSpec {
    pub n: [i32; 3],
    pub polarization: usize,
    pub re: f64,
    pub im: f64,
}

/// One scenario file: a tagged kind plus kind-specific parameters.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Scenario {
    #[serde(rename_all = "kebab-case")]
    OscillatorEvolve {
        #[serde(default = "default_one")]
        mass: f64,
        #[serde(default = "default_one")]
        hbar: f64,
        /// Either a diagonal frequency spectrum or a full potential matrix.
        omega_spectrum: Option<Vec<f64>>,
        u: Option<Vec<Vec<f64>>>,
        k0_re: Vec<Vec<f64>>,
        #[serde(default)]
        k0_im: Option<Vec<Vec<f64>>>,
        t_grid: Vec<f64>,
    },
    #[serde(rename_all = "kebab-case")]
    UncertaintyAudit {
        n: usize,
        #[serde(default = "default_one")]
        mass: f64,
        #[serde(default = "default_one")]
        hbar: f64,
        /// Randomized squeezed states appended after the ground-state row.
        #[serde(default)]
        samples: usize,
    },
    #[serde(rename_all = "kebab-case")]
    WignerGrid {
        #[serde(default = "default_one")]
        mass: f64,
        #[serde(default = "default_one")]
        hbar: f64,
        a: Vec<Vec<f64>>,
        b: Vec<Vec<f64>>,
        xi: Vec<f64>,
        pi: Vec<f64>,
        omega_spectrum: Vec<f64>,
        #[serde(default)]
        t: f64,
        x_grid: Vec<f64>,
        p_grid: Vec<f64>,
    },
    #[serde(rename_all = "kebab-case")]
    FieldPropagate {
        l: f64,
        m_sites: usize,
        #[serde(default = "default_one")]
        eps: f64,
        #[serde(default = "default_one")]
        mu: f64,
        #[serde(default = "default_one")]
        hbar: f64,
        b_modes: Vec<ModeSpec>,
        d_modes: Vec<ModeSpec>,
        t_grid: Vec<f64>,
    },
    #[serde(rename_all = "kebab-case")]
    EnergyShift {
        l: f64,
        m_sites: usize,
        #[serde(default = "default_one")]
        eps: f64,
        #[serde(default = "default_one")]
        mu: f64,
        #[serde(default = "default_one")]
        hbar: f64,
        delta_eps: f64,
        k_max_grid: Vec<f64>,
    },
    #[serde(rename_all = "kebab-case")]
    KernelProfile {
        r2: f64,
        #[serde(default)]
        t: f64,
        #[serde(default = "default_one")]
        c: f64,
        r1_grid: Vec<f64>,
    },
}

pub struct RunOutput {
    pub scenario: &'static str,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub flags: Vec<String>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn invalid(key: &str, reason: impl std::fmt::Display) -> CliError {
    CliError {
        code: 2,
        message: format!("invalid scenario: key '{key}': {reason}"),
    }
}

fn square(key: &str, rows: &[Vec<f64>]) -> Result<RMat, CliError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(invalid(key, "must be a nonempty square row-major matrix"));
    }
    Ok(RMat::from_fn(n, n, |i, j| rows[i][j]))
}

fn positive(key: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(key, format!("must be positive and finite, got {v}")))
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: 2,
        message: format!("cannot read scenario file {}: {e}", path.display()),
    })?;
    let scenario: Scenario = serde_json::from_str(&text).map_err(|e| CliError {
        code: 2,
        message: format!("malformed scenario: {e}"),
    })?;
    validate(&scenario)?;
    Ok(scenario)
}

/// Range and shape checks, each naming the offending key.
pub fn validate(s: &Scenario) -> Result<(), CliError> {
    match s {
        Scenario::OscillatorEvolve {
            mass,
            hbar,
            omega_spectrum,
            u,
            k0_re,
            k0_im,
            t_grid,
        } => {
            positive("mass", *mass)?;
            positive("hbar", *hbar)?;
            let n = match (omega_spectrum, u) {
                (Some(w), None) => {
                    for v in w {
                        positive("omega-spectrum", *v)?;
                    }
                    w.len()
                }
                (None, Some(u)) => square("u", u)?.nrows(),
                _ => {
                    return Err(invalid(
                        "omega-spectrum/u",
                        "exactly one of the two must be present",
                    ))
                }
            };
            let a = square("k0-re", k0_re)?;
            if a.nrows() != n {
                return Err(invalid("k0-re", format!("expected {n}x{n}")));
            }
            if let Some(b) = k0_im {
                if square("k0-im", b)?.nrows() != n {
                    return Err(invalid("k0-im", format!("expected {n}x{n}")));
                }
            }
            if t_grid.is_empty() {
                return Err(invalid("t-grid", "must be nonempty"));
            }
            Ok(())
        }
        Scenario::UncertaintyAudit { n, mass, hbar, .. } => {
            if *n == 0 || *n > 8 {
                return Err(invalid("n", "must be in 1..=8"));
            }
            positive("mass", *mass)?;
            positive("hbar", *hbar)?;
            Ok(())
        }
        Scenario::WignerGrid {
            mass,
            hbar,
            a,
            b,
            xi,
            pi,
            omega_spectrum,
            x_grid,
            p_grid,
            ..
        } => {
            positive("mass", *mass)?;
            positive("hbar", *hbar)?;
            if a.len() != 1 || b.len() != 1 || xi.len() != 1 || pi.len() != 1 {
                return Err(invalid("a/b/xi/pi", "wigner-grid is one-dimensional"));
            }
            square("a", a)?;
            square("b", b)?;
            if omega_spectrum.len() != 1 {
                return Err(invalid("omega-spectrum", "expected one frequency"));
            }
            positive("omega-spectrum", omega_spectrum[0])?;
            positive("a", a[0][0])?;
            if x_grid.is_empty() || p_grid.is_empty() {
                return Err(invalid("x-grid/p-grid", "must be nonempty"));
            }
            Ok(())
        }
        Scenario::FieldPropagate {
            l,
            m_sites,
            eps,
            mu,
            hbar,
            b_modes,
            d_modes,
            t_grid,
        } => {
            positive("l", *l)?;
            positive("eps", *eps)?;
            positive("mu", *mu)?;
            positive("hbar", *hbar)?;
            if *m_sites < 2 || m_sites % 2 != 0 {
                return Err(invalid("m-sites", "must be even and at least 2"));
            }
            let max = (*m_sites as i32) / 2 - 1;
            for (key, modes) in [("b-modes", b_modes), ("d-modes", d_modes)] {
                for m in modes {
                    if m.n == [0, 0, 0] || m.n.iter().any(|c| c.abs() > max) {
                        return Err(invalid(key, "mode index zero or beyond lattice"));
                    }
                    if m.polarization > 1 {
                        return Err(invalid(key, "polarization must be 0 or 1"));
                    }
                }
            }
            if t_grid.is_empty() {
                return Err(invalid("t-grid", "must be nonempty"));
            }
            Ok(())
        }
        Scenario::EnergyShift {
            l,
            m_sites,
            eps,
            mu,
            hbar,
            delta_eps,
            k_max_grid,
        } => {
            positive("l", *l)?;
            positive("eps", *eps)?;
            positive("mu", *mu)?;
            positive("hbar", *hbar)?;
            if *m_sites < 2 || m_sites % 2 != 0 {
                return Err(invalid("m-sites", "must be even and at least 2"));
            }
            if delta_eps.abs() > 0.5 * eps {
                return Err(invalid("delta-eps", "exceeds 50% of eps"));
            }
            let nyquist = std::f64::consts::PI * *m_sites as f64 / l;
            for k in k_max_grid {
                positive("k-max-grid", *k)?;
                if *k > nyquist {
                    return Err(invalid(
                        "k-max-grid",
                        format!("{k} exceeds the lattice Nyquist {nyquist}"),
                    ));
                }
            }
            Ok(())
        }
        Scenario::KernelProfile { r2, c, r1_grid, .. } => {
            positive("r2", *r2)?;
            positive("c", *c)?;
            if r1_grid.is_empty() {
                return Err(invalid("r1-grid", "must be nonempty"));
            }
            for r in r1_grid {
                positive("r1-grid", *r)?;
            }
            Ok(())
        }
    }
}

fn thread_cap() -> usize {
    std::env::var("SQUEEZEKIT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|n| *n >= 1)
        .unwrap_or(1)
}

fn lib_err(e: Error) -> CliError {
    CliError {
        code: 3,
        message: e.to_string(),
    }
}

fn frequency_from(
    omega_spectrum: &Option<Vec<f64>>,
    u: &Option<Vec<Vec<f64>>>,
    mass: f64,
    hbar: f64,
) -> Result<FrequencyMatrix, CliError> {
    match (omega_spectrum, u) {
        (Some(w), None) => {
            FrequencyMatrix::new(RMat::from_diagonal(&DVector::from_vec(w.clone())))
                .map_err(lib_err)
        }
        (None, Some(u)) => {
            let u = square("u", u)?;
            let sys = OscillatorSystem::standard(mass, u, hbar).map_err(lib_err)?;
            solve_frequency(&sys).map_err(lib_err)
        }
        _ => unreachable!("validated"),
    }
}

pub fn execute(scenario: &Scenario, seed: u64) -> Result<RunOutput, CliError> {
    match scenario {
        Scenario::OscillatorEvolve {
            mass,
            hbar,
            omega_spectrum,
            u,
            k0_re,
            k0_im,
            t_grid,
        } => {
            let freq = frequency_from(omega_spectrum, u, *mass, *hbar)?;
            let n = freq.omega.nrows();
            let re = square("k0-re", k0_re)?;
            let im = match k0_im {
                Some(b) => square("k0-im", b)?,
                None => RMat::zeros(n, n),
            };
            let k0 = crate::linalg::to_complex(&re, &im);
            let mut columns = vec!["t".to_string()];
            for part in ["a", "b"] {
                for i in 0..n {
                    for j in 0..n {
                        columns.push(format!("{part}_{i}_{j}"));
                    }
                }
            }
            let mut rows = Vec::new();
            let mut flags = Vec::new();
            for &t in t_grid {
                match evolve_kernel_closed(&k0, &freq, t) {
                    Ok(k) => {
                        let mut row = vec![t];
                        row.extend(real_part(&k).iter().cloned());
                        row.extend(imag_part(&k).iter().cloned());
                        rows.push(row);
                    }
                    Err(e) => flags.push(format!("t={t:.12e}: {e}")),
                }
            }
            Ok(RunOutput {
                scenario: "oscillator-evolve",
                columns,
                rows,
                flags,
            })
        }
        Scenario::UncertaintyAudit {
            n,
            mass,
            hbar,
            samples,
        } => {
            let columns = vec![
                "index".to_string(),
                "symplectic_residual".to_string(),
                "entropy_x".to_string(),
                "entropy_p".to_string(),
                "entropy_bound".to_string(),
                "entropic_excess".to_string(),
            ];
            let sys =
                OscillatorSystem::standard(*mass, RMat::identity(*n, *n), *hbar).map_err(lib_err)?;
            let mut states = vec![ground_state(&sys).map_err(lib_err)?];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..*samples {
                states.push(sample::state(*n, *hbar, *mass, &mut rng));
            }
            let mut rows = Vec::new();
            let mut flags = Vec::new();
            for (i, state) in states.iter().enumerate() {
                let audit = || -> crate::error::Result<Vec<f64>> {
                    let res = symplectic_residual(&state.correlations(), *hbar)?;
                    let (sx, sp) = entropies(state)?;
                    let bound = *n as f64 * (std::f64::consts::PI * std::f64::consts::E * hbar).ln();
                    let excess = entropic_excess(state)?;
                    Ok(vec![i as f64, res, sx, sp, bound, excess])
                };
                match audit() {
                    Ok(row) => rows.push(row),
                    Err(e) => flags.push(format!("index={i}: {e}")),
                }
            }
            Ok(RunOutput {
                scenario: "uncertainty-audit",
                columns,
                rows,
                flags,
            })
        }
        Scenario::WignerGrid {
            mass,
            hbar,
            a,
            b,
            xi,
            pi,
            omega_spectrum,
            t,
            x_grid,
            p_grid,
        } => {
            let state = GaussianState::new(
                RVec::from_vec(xi.clone()),
                RVec::from_vec(pi.clone()),
                RMat::from_element(1, 1, a[0][0]),
                RMat::from_element(1, 1, b[0][0]),
                *hbar,
                *mass,
            )
            .map_err(|e| invalid("a", e))?;
            let w = omega_spectrum[0];
            let sys = OscillatorSystem::standard(
                *mass,
                RMat::from_element(1, 1, mass * mass * w * w),
                *hbar,
            )
            .map_err(lib_err)?;
            let points: Vec<(f64, f64)> = x_grid
                .iter()
                .flat_map(|&x| p_grid.iter().map(move |&p| (x, p)))
                .collect();
            let cap = thread_cap().min(points.len().max(1));
            let chunk = points.len().div_ceil(cap);
            let mut rows = vec![Vec::new(); points.len()];
            let results: Vec<crate::error::Result<Vec<f64>>> = std::thread::scope(|scope| {
                let handles: Vec<_> = points
                    .chunks(chunk)
                    .map(|pts| {
                        let state = &state;
                        let sys = &sys;
                        scope.spawn(move || {
                            pts.iter()
                                .map(|&(x, p)| {
                                    let pt = PhasePoint::new(
                                        RVec::from_vec(vec![x]),
                                        RVec::from_vec(vec![p]),
                                    );
                                    wigner_evolved(state, &pt, sys, *t)
                                })
                                .collect::<crate::error::Result<Vec<f64>>>()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let mut flat = Vec::new();
            for r in results {
                flat.extend(r.map_err(lib_err)?);
            }
            for (row, (&(x, p), w)) in rows.iter_mut().zip(points.iter().zip(flat)) {
                *row = vec![x, p, w];
            }
            Ok(RunOutput {
                scenario: "wigner-grid",
                columns: vec!["x".to_string(), "p".to_string(), "w".to_string()],
                rows,
                flags: Vec::new(),
            })
        }
        Scenario::FieldPropagate {
            l,
            m_sites,
            eps,
            mu,
            hbar,
            b_modes,
            d_modes,
            t_grid,
        } => {
            let lattice = LatticeConfig::new(*l, *m_sites, *eps, *mu, *hbar).map_err(lib_err)?;
            let build = |modes: &[ModeSpec]| -> crate::error::Result<TransverseField> {
                let mut f = TransverseField::zero();
                for m in modes {
                    f.add_plane_wave(&lattice, m.n, m.polarization, C64::new(m.re, m.im))?;
                }
                Ok(f)
            };
            let b = build(b_modes).map_err(lib_err)?;
            let d = build(d_modes).map_err(lib_err)?;
            let mut rows = Vec::new();
            for &t in t_grid {
                let (bt, dt) = evolve_coherent(&b, &d, &lattice, t).map_err(lib_err)?;
                rows.push(vec![
                    t,
                    field_energy(&bt, &dt, &lattice),
                    photon_number(&bt, &dt, &lattice).map_err(lib_err)?,
                ]);
            }
            Ok(RunOutput {
                scenario: "field-propagate",
                columns: vec!["t".to_string(), "energy".to_string(), "photons".to_string()],
                rows,
                flags: Vec::new(),
            })
        }
        Scenario::EnergyShift {
            l,
            m_sites,
            eps,
            mu,
            hbar,
            delta_eps,
            k_max_grid,
        } => {
            let lattice = LatticeConfig::new(*l, *m_sites, *eps, *mu, *hbar).map_err(lib_err)?;
            let profile = PerturbationProfile::constant(&lattice, *delta_eps).map_err(lib_err)?;
            let mut rows = Vec::new();
            for &k_max in k_max_grid {
                let shift = vacuum_energy_shift(&profile, &lattice, k_max).map_err(lib_err)?;
                rows.push(vec![k_max, shift]);
            }
            Ok(RunOutput {
                scenario: "energy-shift",
                columns: vec!["k_max".to_string(), "shift".to_string()],
                rows,
                flags: Vec::new(),
            })
        }
        Scenario::KernelProfile { r2, t, c, r1_grid } => {
            let mut rows = Vec::new();
            let mut flags = Vec::new();
            for &r1 in r1_grid {
                match crate::field::g_scalar(r1, *r2, *t, *c) {
                    Ok(g) => rows.push(vec![r1, g.re, g.im, 0.0]),
                    Err(e @ Error::LightCone { .. }) => {
                        flags.push(format!("r1={r1:.12e}: {e}"));
                        rows.push(vec![r1, 0.0, 0.0, 1.0]);
                    }
                    Err(e) => return Err(lib_err(e)),
                }
            }
            Ok(RunOutput {
                scenario: "kernel-profile",
                columns: vec![
                    "r1".to_string(),
                    "re_g".to_string(),
                    "im_g".to_string(),
                    "flag".to_string(),
                ],
                rows,
                flags,
            })
        }
    }
}

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

/// Deterministic serialization: CSV with a header row, or JSON with the
/// stable schema {scenario, columns, rows, flags}. All floats at %.12e.
pub fn emit(out: &RunOutput, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::new();
            s.push_str(&out.columns.join(","));
            s.push('\n');
            for row in &out.rows {
                let line: Vec<String> = row.iter().map(|v| fmt(*v)).collect();
                s.push_str(&line.join(","));
                s.push('\n');
            }
            for flag in &out.flags {
                s.push_str("# flag: ");
                s.push_str(flag);
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let cols: Vec<String> = out
                .columns
                .iter()
                .map(|c| serde_json::to_string(c).unwrap())
                .collect();
            let rows: Vec<String> = out
                .rows
                .iter()
                .map(|r| {
                    let vals: Vec<String> = r.iter().map(|v| fmt(*v)).collect();
                    format!("[{}]", vals.join(", "))
                })
                .collect();
            let flags: Vec<String> = out
                .flags
                .iter()
                .map(|f| serde_json::to_string(f).unwrap())
                .collect();
            format!(
                "{{\n  \"scenario\": \"{}\",\n  \"columns\": [{}],\n  \"rows\": [{}],\n  \"flags\": [{}]\n}}\n",
                out.scenario,
                cols.join(", "),
                rows.join(", "),
                flags.join(", ")
            )
        }
    }
}

/// Top-level entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.command {
        Command::Validate { scenario } => match load_scenario(&scenario) {
            Ok(_) => {
                println!("ok");
                0
            }
            Err(e) => {
                eprintln!("{}", e.message);
                e.code
            }
        },
        Command::Run {
            scenario,
            out,
            format,
            seed,
        } => {
            let loaded = match load_scenario(&scenario) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}", e.message);
                    return e.code;
                }
            };
            let result = match execute(&loaded, seed) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{}", e.message);
                    return e.code;
                }
            };
            let text = emit(&result, format);
            if let Err(e) = std::fs::write(&out, text) {
                eprintln!("cannot write {}: {e}", out.display());
                return 2;
            }
            if result.flags.is_empty() {
                0
            } else {
                for flag in &result.flags {
                    eprintln!("flag: {flag}");
                }
                3
            }
        }
    }
}
