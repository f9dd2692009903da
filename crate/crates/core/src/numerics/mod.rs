//! Numerical building blocks: complex linear algebra, Bessel `J0`, and
//! Gauss-Laguerre expectations over Gamma densities.

pub mod bessel;
pub mod linalg;
pub mod quadrature;

pub use bessel::bessel_j0;
pub use linalg::{gram_inverse, hermitian_inner, ComplexMatrix, ComplexVector};
pub use quadrature::{gamma_log_expectation, gauss_laguerre, QuadratureRule};

/// Fixed-order pairwise summation. The tree shape depends only on the length,
/// so the result is reproducible regardless of how the inputs were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Sample mean by pairwise summation.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    pairwise_sum(xs) / xs.len() as f64
}

/// Unbiased sample variance (two-pass).
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let sq: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    pairwise_sum(&sq) / (xs.len() - 1) as f64
}

/// Standard error of the sample mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    (variance(xs) / xs.len() as f64).sqrt()
}
