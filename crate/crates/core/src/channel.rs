//! System configuration and the outdated-CSIT channel model.
//!
//! The channel seen at slot `m` mixes the channel the transmitter knows
//! (slot `m - 1`) with an independent innovation:
//! `h_k[m] = e h_k[m-1] + sqrt(1 - e^2) e_k[m]`, with `e = |J0(2 pi f_D T)|`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bessel_j0, ComplexMatrix};
use crate::randgen::RngStream;

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobilityParams {
    /// User velocity, m/s.
    pub velocity: f64,
    /// Carrier frequency, Hz.
    pub carrier_hz: f64,
    /// Channel instantiation interval, s.
    pub interval_s: f64,
}

impl MobilityParams {
    pub fn new(velocity: f64, carrier_hz: f64, interval_s: f64) -> Result<Self> {
        if !(velocity >= 0.0 && velocity.is_finite()) {
            return Err(Error::invalid(format!("velocity must be finite and >= 0, got {velocity}")));
        }
        if !(carrier_hz > 0.0 && carrier_hz.is_finite()) {
            return Err(Error::invalid(format!("carrier frequency must be > 0, got {carrier_hz}")));
        }
        if !(interval_s > 0.0 && interval_s.is_finite()) {
            return Err(Error::invalid(format!("interval must be > 0, got {interval_s}")));
        }
        Ok(Self { velocity, carrier_hz, interval_s })
    }

    /// Maximum Doppler frequency `v f_c / c`.
    pub fn doppler_hz(&self) -> f64 {
        self.velocity * self.carrier_hz / SPEED_OF_LIGHT
    }
}

/// Jakes temporal correlation `J0(2 pi f_D T)`, in `[-1, 1]`.
pub fn jakes_epsilon(mob: &MobilityParams) -> Result<f64> {
    bessel_j0(2.0 * std::f64::consts::PI * mob.doppler_hz() * mob.interval_s)
}

/// Scenario parameters shared by every trial.
///
/// Only `S_k = P L_k / sigma_k^2` enters the SINRs, so per-user SNRs are all
/// that is stored. Private streams share `tau` equally (`alpha_k = tau / K`)
/// and the common stream gets `1 - tau`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemConfig {
    nt: usize,
    k: usize,
    epsilon: f64,
    /// Set when `epsilon` came from a negative Jakes coefficient.
    epsilon_negative: bool,
    tau: f64,
    snr: Vec<f64>,
    seed: u64,
    trials: u64,
}

pub const DEFAULT_TRIALS: u64 = 100_000;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl SystemConfig {
    /// Uniform-SNR configuration. `snr_db = -inf` gives `S_k = 0`.
    pub fn new(nt: usize, k: usize, epsilon: f64, tau: f64, snr_db: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        Self::with_user_snr_db(nt, k, epsilon, tau, &vec![snr_db; k])
    }

    pub fn with_user_snr_db(nt: usize, k: usize, epsilon: f64, tau: f64, snr_db: &[f64]) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        if nt <= k {
            return Err(Error::invalid(format!(
                "the transmitter needs more antennas than users (N_t > K), got N_t = {nt}, K = {k}"
            )));
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::invalid(format!("epsilon must lie in [0, 1], got {epsilon}")));
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::invalid(format!("tau must lie in [0, 1], got {tau}")));
        }
        if snr_db.len() != k {
            return Err(Error::DimensionMismatch { expected: k, actual: snr_db.len() });
        }
        if snr_db.iter().any(|s| s.is_nan() || *s == f64::INFINITY) {
            return Err(Error::invalid("SNR must be finite dB or -inf"));
        }
        Ok(Self {
            nt,
            k,
            epsilon,
            epsilon_negative: false,
            tau,
            snr: snr_db.iter().map(|&d| db_to_linear(d)).collect(),
            seed: 0,
            trials: DEFAULT_TRIALS,
        })
    }

    /// Configuration whose correlation comes from user mobility. A negative
    /// Jakes coefficient is used through its magnitude (only `e^2` enters the
    /// model) and flagged in [`SystemConfig::epsilon_negative`].
    pub fn from_mobility(nt: usize, k: usize, mob: &MobilityParams, tau: f64, snr_db: f64) -> Result<Self> {
        let raw = jakes_epsilon(mob)?;
        if raw < 0.0 {
            log::warn!("Jakes correlation {raw:.6} is negative; using |epsilon| = {:.6}", raw.abs());
        }
        let mut cfg = Self::new(nt, k, raw.abs().min(1.0), tau, snr_db)?;
        cfg.epsilon_negative = raw < 0.0;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::invalid(format!("tau must lie in [0, 1], got {tau}")));
        }
        self.tau = tau;
        Ok(self)
    }

    /// Per-user SNRs in dB, one per user; everything else is kept.
    pub fn with_snr_db(mut self, snr_db: &[f64]) -> Result<Self> {
        let fresh = Self::with_user_snr_db(self.nt, self.k, self.epsilon, self.tau, snr_db)?;
        self.snr = fresh.snr;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::invalid(format!("epsilon must lie in [0, 1], got {epsilon}")));
        }
        self.epsilon = epsilon;
        self.epsilon_negative = false;
        Ok(self)
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn epsilon_negative(&self) -> bool {
        self.epsilon_negative
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Linear `S_k` per user.
    pub fn snr(&self) -> &[f64] {
        &self.snr
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// `alpha_c = 1 - tau`.
    pub fn common_fraction(&self) -> f64 {
        1.0 - self.tau
    }

    /// `alpha_k = tau / K`.
    pub fn private_fraction(&self) -> f64 {
        self.tau / self.k as f64
    }
}

/// Outdated channel, innovation, and the current channel built from them.
/// Matrices are `N_t x K`, one column per user.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelPair {
    pub h_prev: ComplexMatrix,
    pub innovation: ComplexMatrix,
    pub h_now: ComplexMatrix,
    pub epsilon: f64,
}

impl ChannelPair {
    /// `H_now = e H_prev + sqrt(1 - e^2) E`, entrywise.
    pub fn compose(h_prev: ComplexMatrix, innovation: ComplexMatrix, epsilon: f64) -> Result<Self> {
        if h_prev.rows() != innovation.rows() || h_prev.cols() != innovation.cols() {
            return Err(Error::DimensionMismatch {
                expected: h_prev.rows() * h_prev.cols(),
                actual: innovation.rows() * innovation.cols(),
            });
        }
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::invalid(format!("epsilon must lie in [0, 1], got {epsilon}")));
        }
        let fresh = (1.0 - epsilon * epsilon).sqrt();
        let data: Vec<Complex64> =
            h_prev.as_slice().iter().zip(innovation.as_slice()).map(|(h, e)| h * epsilon + e * fresh).collect();
        let h_now = ComplexMatrix::new(h_prev.rows(), h_prev.cols(), data)?;
        Ok(Self { h_prev, innovation, h_now, epsilon })
    }

    /// Same outdated channel and innovation, recomposed at another correlation.
    pub fn at_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::compose(self.h_prev.clone(), self.innovation.clone(), epsilon)
    }
}

/// Draws `H_prev` and `E` with i.i.d. `CN(0, 1)` entries (in that order) and
/// composes the current channel.
pub fn draw_channel_pair(rng: &mut RngStream, cfg: &SystemConfig) -> Result<ChannelPair> {
    let (nt, k) = (cfg.nt(), cfg.k());
    let mut prev = vec![Complex64::new(0.0, 0.0); nt * k];
    let mut innov = vec![Complex64::new(0.0, 0.0); nt * k];
    rng.fill_complex_gaussian(&mut prev);
    rng.fill_complex_gaussian(&mut innov);
    ChannelPair::compose(ComplexMatrix::new(nt, k, prev)?, ComplexMatrix::new(nt, k, innov)?, cfg.epsilon())
}
