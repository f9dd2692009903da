//! Closed-form Gamma surrogates for the received private-stream power `X`.
//!
//! `X` is the total power that user `k` receives from all zero-forcing private
//! precoders when the precoders were built from an outdated channel. Splitting
//! the current channel into its outdated part and the innovation gives
//!
//! ```text
//! X = (1 - e^2) sum_j |e_k^H p_j|^2 + e^2 |h_k^H[m-1] p_k|^2 + X_CC
//! ```
//!
//! where `e` is the temporal correlation and `X_CC` a zero-mean cross term.
//! Both surrogates match the first two moments of `X` with a `Gamma(D, Theta)`:
//!
//! - the improved fit keeps the second moment of the cross term,
//!   `mu = 2 e^2 (1 - e^2) (N_t - K + 1)`;
//! - the baseline fit drops it (`mu = 0`) and therefore underestimates the
//!   variance while keeping the same mean.

use serde::Serialize;

use crate::error::{Error, Result};

/// `Gamma(shape D, scale Theta)`; mean `D Theta`, variance `D Theta^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaParams {
    shape: f64,
    scale: f64,
}

impl GammaParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::invalid(format!("Gamma shape must be finite and > 0, got {shape}")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::invalid(format!("Gamma scale must be finite and > 0, got {scale}")));
        }
        Ok(Self { shape, scale })
    }

    /// Moment matching: `D = mean^2 / var`, `Theta = var / mean`.
    pub fn from_moments(mean: f64, variance: f64) -> Result<Self> {
        if !(mean > 0.0) || !(variance > 0.0) {
            return Err(Error::invalid(format!(
                "moment matching needs positive mean and variance, got {mean} and {variance}"
            )));
        }
        Self::new(mean * mean / variance, variance / mean)
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }
}

fn check_system(nt: usize, k: usize, epsilon: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    if nt <= k {
        return Err(Error::invalid(format!("N_t must exceed K (got N_t = {nt}, K = {k})")));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::invalid(format!("epsilon must lie in [0, 1], got {epsilon}")));
    }
    Ok(())
}

/// `E[X] = K (1 - e^2) + (N_t - K + 1) e^2`.
pub fn x_mean(nt: usize, k: usize, epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    k as f64 * (1.0 - e2) + (nt - k + 1) as f64 * e2
}

/// Variance correction carried by the cross term.
pub fn cross_term_mu(nt: usize, k: usize, epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    2.0 * e2 * (1.0 - e2) * (nt - k + 1) as f64
}

/// `e^4 (N_t + 1) + (1 - 2 e^2) K`, the variance without the cross term.
fn variance_without_cross(nt: usize, k: usize, epsilon: f64) -> f64 {
    let e2 = epsilon * epsilon;
    e2 * e2 * (nt + 1) as f64 + (1.0 - 2.0 * e2) * k as f64
}

/// Improved surrogate `X_G`: moment match including `mu`.
pub fn lemma1_params(nt: usize, k: usize, epsilon: f64) -> Result<GammaParams> {
    check_system(nt, k, epsilon)?;
    let variance = variance_without_cross(nt, k, epsilon) + cross_term_mu(nt, k, epsilon);
    GammaParams::from_moments(x_mean(nt, k, epsilon), variance)
}

/// Baseline surrogate `X_D`: same construction with `mu = 0`.
///
/// Fails when `e^4 (N_t + 1) + (1 - 2 e^2) K <= 0`, where the baseline has no
/// valid Gamma fit.
pub fn baseline_params(nt: usize, k: usize, epsilon: f64) -> Result<GammaParams> {
    check_system(nt, k, epsilon)?;
    let variance = variance_without_cross(nt, k, epsilon);
    if !(variance > 0.0) {
        return Err(Error::invalid(format!(
            "baseline variance is nonpositive ({variance}) at N_t = {nt}, K = {k}, epsilon = {epsilon}"
        )));
    }
    GammaParams::from_moments(x_mean(nt, k, epsilon), variance)
}

/// Law of the interference power `Z ~ Gamma(K - 1, 1 - e^2)`.
///
/// Returns [`Error::DegenerateZ`] when `Z` is a point mass at zero.
pub fn z_params(k: usize, epsilon: f64) -> Result<GammaParams> {
    if k == 0 || !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::invalid(format!("invalid K = {k} or epsilon = {epsilon}")));
    }
    let scale = 1.0 - epsilon * epsilon;
    if k == 1 || scale < 1e-12 {
        return Err(Error::DegenerateZ { k, epsilon });
    }
    GammaParams::new((k - 1) as f64, scale)
}

/// Second-moment decomposition `E[X^2] = zeta1 + zeta2 + zeta3 + zeta4`.
///
/// - `zeta1`: innovation power squared, `(K + K^2)(1 - e^2)^2`
/// - `zeta2`: outdated direct power squared, `(phi + phi^2) e^4`
/// - `zeta3`: twice their product, `2 (1 - e^2) e^2 K phi`
/// - `zeta4`: cross term squared, `mu`
///
/// with `phi = N_t - K + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport {
    pub mean: f64,
    pub variance: f64,
    pub mu: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub zeta3: f64,
    pub zeta4: f64,
    pub phi: f64,
}

impl MomentReport {
    pub fn second_moment(&self) -> f64 {
        self.zeta1 + self.zeta2 + self.zeta3 + self.zeta4
    }
}

pub fn moment_report(nt: usize, k: usize, epsilon: f64) -> Result<MomentReport> {
    check_system(nt, k, epsilon)?;
    let e2 = epsilon * epsilon;
    let one_m = 1.0 - e2;
    let kf = k as f64;
    let phi = (nt - k + 1) as f64;
    let mu = cross_term_mu(nt, k, epsilon);
    Ok(MomentReport {
        mean: x_mean(nt, k, epsilon),
        variance: variance_without_cross(nt, k, epsilon) + mu,
        mu,
        zeta1: (kf + kf * kf) * one_m * one_m,
        zeta2: (phi + phi * phi) * e2 * e2,
        zeta3: 2.0 * one_m * e2 * kf * phi,
        zeta4: mu,
        phi,
    })
}
