//! Quadrature rules used by the integral oracles: Gauss-Hermite for
//! Gaussian-weighted axes and Gauss-Legendre for finite intervals. Nodes
//! come from the Golub-Welsch eigenvalue construction.

use nalgebra::{DMatrix, DVector};

/// Nodes and weights for integrating e^{-t^2} f(t) over the real line.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 1..n {
            let beta = (j as f64 / 2.0).sqrt();
            jac[(j - 1, j)] = beta;
            jac[(j, j - 1)] = beta;
        }
        let se = jac.symmetric_eigen();
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let w = std::f64::consts::PI.sqrt() * se.eigenvectors[(0, i)].powi(2);
                (se.eigenvalues[i], w)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    /// Integrate f over the real line, assuming f decays at least like
    /// exp(-(t/scale)^2) around `center`. The Gaussian weight is divided
    /// back out, so f is the bare integrand.
    pub fn integrate(&self, center: f64, scale: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| {
                let x = center + scale * t;
                w * (t * t).exp() * f(x) * scale
            })
            .sum()
    }
}

/// Nodes and weights for integrating f over [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 1..n {
            let jf = j as f64;
            let beta = jf / (4.0 * jf * jf - 1.0).sqrt();
            jac[(j - 1, j)] = beta;
            jac[(j, j - 1)] = beta;
        }
        let se = jac.symmetric_eigen();
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| (se.eigenvalues[i], 2.0 * se.eigenvectors[(0, i)].powi(2)))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self {
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn integrate<T>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T
    where
        T: std::ops::Mul<f64, Output = T> + std::iter::Sum,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| f(mid + half * t) * (w * half))
            .sum()
    }
}

/// Tensor-product integral of f over R^n with per-axis centers and scales.
pub fn integrate_nd(
    rule: &GaussHermite,
    centers: &[f64],
    scales: &[f64],
    f: &mut dyn FnMut(&DVector<f64>) -> f64,
) -> f64 {
    let dim = centers.len();
    assert_eq!(scales.len(), dim);
    let mut idx = vec![0usize; dim];
    let mut total = 0.0;
    let mut x = DVector::zeros(dim);
    loop {
        let mut w = 1.0;
        for d in 0..dim {
            let i = idx[d];
            let t = rule.nodes[i];
            x[d] = centers[d] + scales[d] * t;
            w *= rule.weights[i] * (t * t).exp() * scales[d];
        }
        total += w * f(&x);
        // odometer increment
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < rule.nodes.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == dim {
                return total;
            }
        }
    }
}
