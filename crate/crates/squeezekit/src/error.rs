use thiserror::Error;

/// Errors raised by the numerical layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix `{name}` is not symmetric (asymmetry {asymmetry:.3e} > {tol:.3e})")]
    NotSymmetric {
        name: &'static str,
        asymmetry: f64,
        tol: f64,
    },
    #[error("matrix `{name}` is not positive definite (min eigenvalue {min_eig:.3e})")]
    NotPositiveDefinite { name: &'static str, min_eig: f64 },
    #[error("matrix `{name}` is ill-conditioned (condition number {cond:.3e} > {max:.3e})")]
    IllConditioned {
        name: &'static str,
        cond: f64,
        max: f64,
    },
    #[error("singular matrix `{0}`")]
    Singular(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("time step too large: evolved kernel lost positivity at t = {t:.6e}; retry with smaller dt")]
    StepSize { t: f64 },
    #[error("zero wave vector is excluded")]
    ZeroWaveVector,
    #[error("field is not transverse: max |k.f(k)| = {violation:.3e} exceeds {tol:.3e}")]
    NonTransverse { violation: f64, tol: f64 },
    #[error("evaluation point lies in the light-cone exclusion band: |r - c|t|| = {distance:.3e} < {band:.3e}")]
    LightCone { distance: f64, band: f64 },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("perturbation too large: max |de|/eps = {ratio:.3} exceeds 0.5")]
    PerturbationTooLarge { ratio: f64 },
    #[error("cutoff {k_max:.6e} exceeds lattice Nyquist {nyquist:.6e}")]
    CutoffBeyondNyquist { k_max: f64, nyquist: f64 },
    #[error("kernel is not diagonal in k; inhomogeneous kernels are handled by the perturbative path")]
    UnsupportedRepresentation,
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergent(&'static str),
    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParameter { key: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
