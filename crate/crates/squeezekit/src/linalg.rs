//! Shared dense linear algebra: spectral decompositions of symmetric
//! matrices, matrix functions evaluated in the eigenbasis, and guarded
//! complex solves.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Asymmetry tolerance applied before any spectral decomposition.
pub const SYM_TOL: f64 = 1e-10;
/// Condition-number ceiling for every matrix solve.
pub const COND_MAX: f64 = 1e12;
/// Relative eigenvalue floor below which a matrix counts as singular.
pub const PD_FLOOR: f64 = 1e-12;

pub type RMat = DMatrix<f64>;
pub type RVec = DVector<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn symmetrize(m: &RMat) -> RMat {
    (m + m.transpose()) * 0.5
}

pub fn symmetrize_c(m: &CMat) -> CMat {
    (m + m.transpose()) * C64::new(0.5, 0.0)
}

/// Relative Frobenius asymmetry ||M - M^T|| / max(||M||, 1).
pub fn asymmetry(m: &RMat) -> f64 {
    (m - m.transpose()).norm() / m.norm().max(1.0)
}

pub fn check_symmetric(name: &'static str, m: &RMat, tol: f64) -> Result<()> {
    let asym = asymmetry(m);
    if asym > tol {
        return Err(Error::NotSymmetric {
            name,
            asymmetry: asym,
            tol,
        });
    }
    Ok(())
}

/// Eigendecomposition of a real symmetric matrix, symmetrized on entry.
#[derive(Debug, Clone)]
pub struct SymEig {
    pub vals: RVec,
    pub vecs: RMat,
}

impl SymEig {
    pub fn new(name: &'static str, m: &RMat) -> Result<Self> {
        check_symmetric(name, m, SYM_TOL)?;
        let se = symmetrize(m).symmetric_eigen();
        Ok(Self {
            vals: se.eigenvalues,
            vecs: se.eigenvectors,
        })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.vals.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.vals.iter().fold(0.0_f64, |m, &v| m.max(v.abs()))
    }

    pub fn require_spd(&self, name: &'static str) -> Result<()> {
        let min = self.min_eigenvalue();
        if min <= PD_FLOOR * self.max_abs_eigenvalue() {
            return Err(Error::NotPositiveDefinite { name, min_eig: min });
        }
        Ok(())
    }

    /// V f(Lambda) V^T.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> RMat {
        let n = self.vals.len();
        let d = RMat::from_diagonal(&RVec::from_fn(n, |i, _| f(self.vals[i])));
        &self.vecs * d * self.vecs.transpose()
    }

    pub fn sqrt(&self) -> RMat {
        self.apply(f64::sqrt)
    }

    pub fn inverse(&self) -> RMat {
        self.apply(|x| 1.0 / x)
    }

    pub fn log_det(&self) -> f64 {
        self.vals.iter().map(|&v| v.ln()).sum()
    }
}

/// Symmetric positive-definite check; returns the decomposition on success.
pub fn spd_eig(name: &'static str, m: &RMat) -> Result<SymEig> {
    let eig = SymEig::new(name, m)?;
    eig.require_spd(name)?;
    Ok(eig)
}

pub fn is_spd(m: &RMat) -> bool {
    symmetrize(m).cholesky().is_some()
}

pub fn to_complex(re: &RMat, im: &RMat) -> CMat {
    CMat::from_fn(re.nrows(), re.ncols(), |i, j| C64::new(re[(i, j)], im[(i, j)]))
}

pub fn real_part(m: &CMat) -> RMat {
    RMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re)
}

pub fn imag_part(m: &CMat) -> RMat {
    RMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].im)
}

pub fn lift(m: &RMat) -> CMat {
    m.map(|x| C64::new(x, 0.0))
}

fn condition_c(m: &CMat) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Solve A X = B for complex square A with an explicit conditioning guard.
pub fn solve_c(name: &'static str, a: &CMat, b: &CMat) -> Result<CMat> {
    let cond = condition_c(a);
    if !cond.is_finite() || cond > COND_MAX {
        return Err(Error::IllConditioned {
            name,
            cond,
            max: COND_MAX,
        });
    }
    a.clone()
        .lu()
        .solve(b)
        .ok_or(Error::Singular(name))
}

pub fn inverse_c(name: &'static str, a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    solve_c(name, a, &CMat::identity(n, n))
}

/// Solve A X = B for real symmetric positive-definite A.
pub fn solve_spd(name: &'static str, a: &RMat, b: &RMat) -> Result<RMat> {
    let eig = spd_eig(name, a)?;
    let max = eig.max_abs_eigenvalue();
    let min = eig.min_eigenvalue();
    if max / min > COND_MAX {
        return Err(Error::IllConditioned {
            name,
            cond: max / min,
            max: COND_MAX,
        });
    }
    Ok(eig.inverse() * b)
}
