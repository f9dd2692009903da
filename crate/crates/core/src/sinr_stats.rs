//! Per-trial received powers and SINRs.
//!
//! For user `k` with current channel `h_k`:
//!
//! - `X = sum_j |h_k^H p_j|^2`, total private-stream power;
//! - `Z = sum_{j != k} |h_k^H p_j|^2`, leaked interference;
//! - `X_CC = 2 e sqrt(1 - e^2) Re(conj(h_k^H[m-1] p_k) e_k^H p_k)`, the cross
//!   term between the outdated channel and the innovation.

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{ChannelPair, SystemConfig};
use crate::numerics::linalg::dot_conj;
use crate::precoding::PrecoderSet;

fn user_column(m: &crate::numerics::ComplexMatrix, k: usize) -> Vec<Complex64> {
    m.column(k)
}

fn fresh_weight(epsilon: f64) -> f64 {
    (1.0 - epsilon * epsilon).sqrt()
}

/// `X` for user `k`.
pub fn compute_x(ch: &ChannelPair, pre: &PrecoderSet, k: usize) -> f64 {
    let h = user_column(&ch.h_now, k);
    (0..pre.num_users()).map(|j| dot_conj(&h, pre.column(j)).norm_sqr()).sum()
}

/// `Z` for user `k`; zero when `K = 1`.
pub fn compute_z(ch: &ChannelPair, pre: &PrecoderSet, k: usize) -> f64 {
    let h = user_column(&ch.h_now, k);
    (0..pre.num_users()).filter(|&j| j != k).map(|j| dot_conj(&h, pre.column(j)).norm_sqr()).sum()
}

/// `X_CC` for user `k`; exactly zero at `epsilon` 0 or 1.
pub fn compute_x_cc(ch: &ChannelPair, pre: &PrecoderSet, k: usize) -> f64 {
    let eps = ch.epsilon;
    let weight = 2.0 * eps * fresh_weight(eps);
    if weight == 0.0 {
        return 0.0;
    }
    let outdated = dot_conj(&user_column(&ch.h_prev, k), pre.column(k));
    let innovation = dot_conj(&user_column(&ch.innovation, k), pre.column(k));
    weight * (outdated.conj() * innovation).re
}

/// `(gamma_c, gamma_p)` for user `k`, in linear scale.
pub fn compute_sinrs(ch: &ChannelPair, pre: &PrecoderSet, cfg: &SystemConfig, k: usize) -> (f64, f64) {
    let h = user_column(&ch.h_now, k);
    let direct = dot_conj(&h, pre.column(k)).norm_sqr();
    let common = dot_conj(&h, pre.common.as_slice()).norm_sqr();
    let x = compute_x(ch, pre, k);
    let z = compute_z(ch, pre, k);
    sinrs(cfg.snr()[k], cfg.tau(), cfg.k(), common, direct, x, z)
}

#[inline]
fn sinrs(snr: f64, tau: f64, k: usize, common: f64, direct: f64, x: f64, z: f64) -> (f64, f64) {
    let private = snr * tau / k as f64;
    let gamma_c = snr * (1.0 - tau) * common / (1.0 + private * x);
    let gamma_p = private * direct / (1.0 + private * z);
    (gamma_c, gamma_p)
}

/// Everything one trial yields for one user.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UserStatistics {
    pub x: f64,
    pub z: f64,
    pub x_cc: f64,
    pub gamma_c: f64,
    pub gamma_p: f64,
    /// `|h_k^H p_k|^2` on the current channel.
    pub direct: f64,
    /// `|h_k^H p_c|^2` on the current channel.
    pub common: f64,
    /// `sum_j |e_k^H p_j|^2`.
    pub innovation_power: f64,
    /// `|h_k^H[m-1] p_k|^2`.
    pub outdated_power: f64,
}

impl UserStatistics {
    /// The three-term expansion `(1 - e^2) sum_j |e_k^H p_j|^2 + e^2 |h_k^H[m-1] p_k|^2 + X_CC`.
    pub fn x_expansion(&self, epsilon: f64) -> f64 {
        let e2 = epsilon * epsilon;
        (1.0 - e2) * self.innovation_power + e2 * self.outdated_power + self.x_cc
    }

    /// Per-trial sample of the cross moment `2 (1 - e^2) sum_j |e_k^H p_j|^2 * e^2 |h_k^H[m-1] p_k|^2`.
    pub fn zeta3_sample(&self, epsilon: f64) -> f64 {
        let e2 = epsilon * epsilon;
        2.0 * (1.0 - e2) * self.innovation_power * e2 * self.outdated_power
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStatistics {
    pub users: Vec<UserStatistics>,
}

impl TrialStatistics {
    /// All users at once; projections onto the precoders are formed once.
    pub fn compute(ch: &ChannelPair, pre: &PrecoderSet, cfg: &SystemConfig) -> Self {
        let k_users = pre.num_users();
        let eps = ch.epsilon;
        let cross_weight = 2.0 * eps * fresh_weight(eps);
        let now = ch.h_now.columns();
        let prev = ch.h_prev.columns();
        let innov = ch.innovation.columns();
        let users = (0..k_users)
            .map(|k| {
                let proj: Vec<f64> = (0..k_users).map(|j| dot_conj(&now[k], pre.column(j)).norm_sqr()).collect();
                let direct = proj[k];
                let x: f64 = proj.iter().sum();
                let z: f64 = proj.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p).sum();
                let common = dot_conj(&now[k], pre.common.as_slice()).norm_sqr();
                let outdated = dot_conj(&prev[k], pre.column(k));
                let innov_k = dot_conj(&innov[k], pre.column(k));
                let innovation_power = (0..k_users)
                    .map(|j| if j == k { innov_k.norm_sqr() } else { dot_conj(&innov[k], pre.column(j)).norm_sqr() })
                    .sum();
                let x_cc = if cross_weight == 0.0 { 0.0 } else { cross_weight * (outdated.conj() * innov_k).re };
                let (gamma_c, gamma_p) = sinrs(cfg.snr()[k], cfg.tau(), cfg.k(), common, direct, x, z);
                UserStatistics {
                    x,
                    z,
                    x_cc,
                    gamma_c,
                    gamma_p,
                    direct,
                    common,
                    innovation_power,
                    outdated_power: outdated.norm_sqr(),
                }
            })
            .collect();
        Self { users }
    }

    /// `min_k gamma_ck`, the SINR the common stream must be decoded at.
    pub fn min_common_sinr(&self) -> f64 {
        self.users.iter().map(|u| u.gamma_c).fold(f64::INFINITY, f64::min)
    }
}
