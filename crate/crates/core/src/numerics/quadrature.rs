//! Generalized Gauss-Laguerre rules normalized to the Gamma density.
//!
//! For `X ~ Gamma(D, Theta)`, `E[f(X)] = sum_i w_i f(Theta t_i)` where `(t_i, w_i)`
//! is the Gauss rule for the weight `t^(D-1) e^(-t) / Gamma(D)`. Nodes and
//! weights come from the eigen-decomposition of the Laguerre Jacobi matrix
//! (Golub-Welsch); the weights are the squared first eigenvector components,
//! which already sum to one, so no `Gamma(D)` is ever formed.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::gamma_approx::GammaParams;

pub const DEFAULT_ORDER: usize = 64;
pub const FALLBACK_ORDER: usize = 256;

/// Shapes below this use [`FALLBACK_ORDER`] nodes.
pub const SMALL_SHAPE: f64 = 0.5;

/// `log(1 + s x)` has a branch point at `x = -1/s`. Once `s * Theta` exceeds
/// this, that point sits close enough to the origin that 64 nodes lose
/// accuracy, and the fallback order is used.
pub const STEEP_LOG_SCALE: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `sum_i w_i f(t_i)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    /// `E[f(X)]` for `X ~ Gamma(shape, scale)`, given a rule built for `shape`.
    pub fn expectation(&self, scale: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.integrate(|t| f(scale * t))
    }
}

/// Gauss rule of `order` nodes for the normalized weight
/// `t^(shape-1) e^(-t) / Gamma(shape)` on `(0, inf)`.
pub fn gauss_laguerre(order: usize, shape: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::invalid("quadrature order must be positive"));
    }
    if !(shape > 0.0) || !shape.is_finite() {
        return Err(Error::invalid(format!("Gamma shape must be positive, got {shape}")));
    }
    let alpha = shape - 1.0;
    let mut diag: Vec<f64> = (0..order).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let mut off: Vec<f64> = (0..order)
        .map(|i| if i + 1 < order { ((i + 1) as f64 * (i as f64 + 1.0 + alpha)).sqrt() } else { 0.0 })
        .collect();
    let mut first = vec![0.0; order];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(first.into_iter().map(|v| v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    let (nodes, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().map(|(t, w)| (t, w / total)).unzip();
    // Weights of the outermost nodes underflow to zero at high orders; those
    // nodes contribute nothing and are harmless.
    if nodes.first().is_some_and(|&t| t <= 0.0) || weights.iter().any(|&w| !(w >= 0.0)) || !(total > 0.0) {
        return Err(Error::Numerical(format!("degenerate Gauss-Laguerre rule (order {order}, shape {shape})")));
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// Eigenvalues overwrite `diag`; `first` tracks the first row of the
/// eigenvector matrix (initialize it to `e_0`).
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], first: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Numerical("QL iteration did not converge".into()));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = first[i + 1];
                first[i + 1] = s * first[i] + c * z;
                first[i] = c * first[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Node count used for `E[log2(1 + s X)]`, `X ~ Gamma(params)`.
pub fn log_expectation_order(params: &GammaParams, s: f64) -> usize {
    if params.shape() < SMALL_SHAPE || s * params.scale() > STEEP_LOG_SCALE {
        FALLBACK_ORDER
    } else {
        DEFAULT_ORDER
    }
}

/// `E[log2(1 + s X)]` in bits for `X ~ Gamma(D, Theta)`.
pub fn gamma_log_expectation(params: &GammaParams, s: f64) -> Result<f64> {
    if !s.is_finite() || s < 0.0 {
        return Err(Error::invalid(format!("scale factor must be finite and >= 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let rule = gauss_laguerre(log_expectation_order(params, s), params.shape())?;
    Ok(rule.expectation(params.scale(), |x| (s * x).ln_1p()) / LN_2)
}
