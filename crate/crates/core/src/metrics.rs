//! Histogram density estimates and goodness-of-fit against Gamma laws.

use serde::Serialize;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{Error, Result};
use crate::gamma_approx::GammaParams;

pub const DEFAULT_BINS: usize = 200;

/// Density-normalized histogram over `[min, max]` of the samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalPdf {
    bin_edges: Vec<f64>,
    density: Vec<f64>,
    sample_count: usize,
}

impl EmpiricalPdf {
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn bins(&self) -> usize {
        self.density.len()
    }

    pub fn midpoints(&self) -> Vec<f64> {
        self.bin_edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// `sum density_i * width_i`; 1 up to rounding.
    pub fn integral(&self) -> f64 {
        self.bin_edges.windows(2).zip(&self.density).map(|(w, d)| d * (w[1] - w[0])).sum()
    }
}

fn check_samples(samples: &[f64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("samples"));
    }
    Ok(())
}

pub fn estimate_pdf(samples: &[f64], bins: usize) -> Result<EmpiricalPdf> {
    check_samples(samples)?;
    if bins < 2 {
        return Err(Error::invalid(format!("need at least 2 bins, got {bins}")));
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let width = (hi - lo) / bins as f64;
    if !(width > 0.0) {
        return Err(Error::ZeroWidthSupport(lo));
    }
    let mut counts = vec![0u64; bins];
    for &x in samples {
        let i = (((x - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let mut bin_edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
    bin_edges.push(hi);
    if bin_edges.windows(2).any(|w| w[1] <= w[0]) {
        // range narrower than the float spacing at this magnitude
        return Err(Error::ZeroWidthSupport(lo));
    }
    let n = samples.len() as f64;
    let density = counts.iter().zip(bin_edges.windows(2)).map(|(&c, w)| c as f64 / (n * (w[1] - w[0]))).collect();
    Ok(EmpiricalPdf { bin_edges, density, sample_count: samples.len() })
}

/// `x^{D-1} e^{-x/Theta} / (Gamma(D) Theta^D)`, evaluated in log space.
pub fn gamma_pdf(params: &GammaParams, x: f64) -> f64 {
    let (d, theta) = (params.shape(), params.scale());
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return match d.partial_cmp(&1.0) {
            Some(std::cmp::Ordering::Less) => f64::INFINITY,
            Some(std::cmp::Ordering::Equal) => 1.0 / theta,
            _ => 0.0,
        };
    }
    ((d - 1.0) * x.ln() - x / theta - ln_gamma(d) - d * theta.ln()).exp()
}

pub fn gamma_cdf(params: &GammaParams, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(params.shape(), x / params.scale())
    }
}

/// Mean squared difference between the histogram and the Gamma density at bin midpoints.
pub fn pdf_mse(emp: &EmpiricalPdf, params: &GammaParams) -> f64 {
    let mids = emp.midpoints();
    let sq: f64 = mids.iter().zip(emp.density()).map(|(&x, &f)| (f - gamma_pdf(params, x)).powi(2)).sum();
    sq / mids.len() as f64
}

/// MSE between two analytic densities on a common abscissa.
pub fn analytic_mse(a: &GammaParams, b: &GammaParams, xs: &[f64]) -> f64 {
    xs.iter().map(|&x| (gamma_pdf(a, x) - gamma_pdf(b, x)).powi(2)).sum::<f64>() / xs.len() as f64
}

fn sorted(samples: &[f64]) -> Vec<f64> {
    let mut v = samples.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// One-sample Kolmogorov-Smirnov distance to `Gamma(D, Theta)`.
pub fn ks_statistic(samples: &[f64], params: &GammaParams) -> Result<f64> {
    check_samples(samples)?;
    let xs = sorted(samples);
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = gamma_cdf(params, x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    Ok(d)
}

/// Two-sample Kolmogorov-Smirnov distance.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<f64> {
    check_samples(a)?;
    check_samples(b)?;
    let (a, b) = (sorted(a), sorted(b));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}
