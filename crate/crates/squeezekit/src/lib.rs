//! squeezekit: Gaussian (squeezed) states of coupled harmonic
//! oscillators and of the lattice-regularized electromagnetic field.
//!
//! The crate is organized around the kernel representation of a Gaussian
//! wave function: a center (xi, pi) and a complex symmetric matrix
//! K = a + ib in the exponent. Modules:
//!
//! - [`oscillator`]: systems, ground states, energies, correlations.
//! - [`evolution`]: exact, factored, numeric, and first-order kernel
//!   dynamics.
//! - [`uncertainty`]: saturation audits (symplectic and entropic).
//! - [`wigner`]: phase-space values, marginals, and classical flow.
//! - [`field`]: transverse lattice modes, photon-number functional,
//!   vacuum Wigner functional, and first-order dielectric response
//!   including the squeezing propagator.
//! - [`cli`]: scenario-driven command line front end.
//!
//! See the examples directory for runnable walkthroughs of each layer.

pub mod cli;
pub mod error;
pub mod evolution;
pub mod field;
pub mod linalg;
pub mod oscillator;
pub mod quad;
pub mod uncertainty;
pub mod wigner;

pub use error::{Error, Result};
