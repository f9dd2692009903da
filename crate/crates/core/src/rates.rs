//! Ergodic rates: Monte Carlo over exact SINRs, and private rates through
//! `R_k = E log2(1 + s X) - E log2(1 + s Z)` with Gamma surrogates for `X` and `Z`.
//!
//! The common rate has no surrogate and is always estimated by Monte Carlo;
//! approximate reports reuse the same trials so they differ only in `R_k`.

use serde::Serialize;

use crate::channel::SystemConfig;
use crate::error::{Error, Result};
use crate::gamma_approx::{baseline_params, lemma1_params, z_params, GammaParams};
use crate::montecarlo::map_trials;
use crate::numerics::{gamma_log_expectation, mean, standard_error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateMethod {
    McExact,
    GammaLemma1,
    GammaBaseline,
}

impl RateMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RateMethod::McExact => "mc-exact",
            RateMethod::GammaLemma1 => "gamma-lemma1",
            RateMethod::GammaBaseline => "gamma-baseline",
        }
    }
}

/// Which Gamma surrogate to use for `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximation {
    /// Variance including the cross-term correction `mu`.
    Lemma1,
    /// Variance with `mu = 0`.
    Baseline,
}

impl Approximation {
    pub fn x_params(self, nt: usize, k: usize, epsilon: f64) -> Result<GammaParams> {
        match self {
            Approximation::Lemma1 => lemma1_params(nt, k, epsilon),
            Approximation::Baseline => baseline_params(nt, k, epsilon),
        }
    }

    pub fn method(self) -> RateMethod {
        match self {
            Approximation::Lemma1 => RateMethod::GammaLemma1,
            Approximation::Baseline => RateMethod::GammaBaseline,
        }
    }
}

/// Rates in bits/s/Hz. Standard errors are zero for quantities computed by quadrature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub method: RateMethod,
    pub common_rate: f64,
    pub private_rates: Vec<f64>,
    pub sum_rate: f64,
    pub trials: u64,
    pub common_se: f64,
    pub private_se: Vec<f64>,
    pub sum_se: f64,
}

fn assemble(
    method: RateMethod,
    common_rate: f64,
    common_se: f64,
    private_rates: Vec<f64>,
    private_se: Vec<f64>,
    sum_se: f64,
    trials: u64,
) -> RateReport {
    let sum_rate = common_rate + private_rates.iter().sum::<f64>();
    RateReport { method, common_rate, private_rates, sum_rate, trials, common_se, private_se, sum_se }
}

/// Per-trial `[log2(1 + min_k gamma_c), log2(1 + gamma_p1), ..., log2(1 + gamma_pK)]`.
fn rate_samples(cfg: &SystemConfig) -> Result<Vec<Vec<f64>>> {
    map_trials(cfg, |s| {
        let mut row = Vec::with_capacity(s.users.len() + 1);
        row.push(s.min_common_sinr().ln_1p() / std::f64::consts::LN_2);
        row.extend(s.users.iter().map(|u| u.gamma_p.ln_1p() / std::f64::consts::LN_2));
        row
    })
}

fn column(rows: &[Vec<f64>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i]).collect()
}

fn mc_report(cfg: &SystemConfig, rows: &[Vec<f64>]) -> RateReport {
    let k = cfg.k();
    let common = column(rows, 0);
    let private: Vec<Vec<f64>> = (1..=k).map(|i| column(rows, i)).collect();
    let totals: Vec<f64> = rows.iter().map(|r| r.iter().sum()).collect();
    assemble(
        RateMethod::McExact,
        mean(&common),
        standard_error(&common),
        private.iter().map(|c| mean(c)).collect(),
        private.iter().map(|c| standard_error(c)).collect(),
        standard_error(&totals),
        cfg.trials(),
    )
}

fn check_trials(cfg: &SystemConfig) -> Result<()> {
    if cfg.trials() == 0 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    Ok(())
}

/// Monte Carlo sum rate over exact per-trial SINRs.
pub fn mc_sum_rate(cfg: &SystemConfig) -> Result<RateReport> {
    check_trials(cfg)?;
    Ok(mc_report(cfg, &rate_samples(cfg)?))
}

/// Monte Carlo common rate and its standard error. Skipped when the common
/// stream carries no power.
pub fn mc_common_rate(cfg: &SystemConfig) -> Result<(f64, f64)> {
    check_trials(cfg)?;
    if cfg.common_fraction() == 0.0 || cfg.snr().iter().all(|&s| s == 0.0) {
        return Ok((0.0, 0.0));
    }
    let samples = map_trials(cfg, |s| s.min_common_sinr().ln_1p() / std::f64::consts::LN_2)?;
    Ok((mean(&samples), standard_error(&samples)))
}

/// Private rate of user `k` from a Gamma surrogate for `X` and the Gamma law of `Z`.
pub fn approx_private_rate(cfg: &SystemConfig, k: usize, x_params: &GammaParams) -> Result<f64> {
    if k >= cfg.k() {
        return Err(Error::invalid(format!("user index {k} out of range for K = {}", cfg.k())));
    }
    let s = cfg.snr()[k] * cfg.private_fraction();
    if s == 0.0 {
        return Ok(0.0);
    }
    let interference = match z_params(cfg.k(), cfg.epsilon()) {
        Ok(z) => gamma_log_expectation(&z, s)?,
        Err(Error::DegenerateZ { .. }) => 0.0,
        Err(e) => return Err(e),
    };
    Ok(gamma_log_expectation(x_params, s)? - interference)
}

fn approx_from_common(cfg: &SystemConfig, which: Approximation, common: (f64, f64)) -> Result<RateReport> {
    let x = which.x_params(cfg.nt(), cfg.k(), cfg.epsilon())?;
    let private = (0..cfg.k()).map(|k| approx_private_rate(cfg, k, &x)).collect::<Result<Vec<_>>>()?;
    Ok(assemble(which.method(), common.0, common.1, private, vec![0.0; cfg.k()], common.1, cfg.trials()))
}

/// Approximate sum rate: surrogate private rates plus the Monte Carlo common rate.
pub fn approx_sum_rate(cfg: &SystemConfig, which: Approximation) -> Result<RateReport> {
    approx_from_common(cfg, which, mc_common_rate(cfg)?)
}

/// Exact, Lemma-1 and baseline reports sharing one Monte Carlo pass.
pub fn compare_rates(cfg: &SystemConfig) -> Result<[RateReport; 3]> {
    let mc = mc_sum_rate(cfg)?;
    let common = (mc.common_rate, mc.common_se);
    let lemma1 = approx_from_common(cfg, Approximation::Lemma1, common)?;
    let baseline = approx_from_common(cfg, Approximation::Baseline, common)?;
    Ok([mc, lemma1, baseline])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::draw_channel_pair;
    use crate::randgen::{gamma_variates, RngStream};

    fn cfg(nt: usize, k: usize, eps: f64, tau: f64, snr_db: f64) -> SystemConfig {
        SystemConfig::new(nt, k, eps, tau, snr_db).unwrap()
    }

    #[test]
    fn zero_snr_gives_zero_rates() {
        let c = cfg(8, 2, 0.5, 0.5, f64::NEG_INFINITY).with_trials(500);
        let r = mc_sum_rate(&c).unwrap();
        assert_eq!(r.sum_rate, 0.0);
        let a = approx_sum_rate(&c, Approximation::Lemma1).unwrap();
        assert_eq!(a.sum_rate, 0.0);
    }

    #[test]
    fn full_private_power_disables_common_stream() {
        let c = cfg(8, 2, 0.5, 1.0, 20.0).with_trials(2000);
        let r = mc_sum_rate(&c).unwrap();
        assert_eq!(r.common_rate, 0.0);
        assert!((r.sum_rate - r.private_rates.iter().sum::<f64>()).abs() < 1e-12);
        let a = approx_sum_rate(&c, Approximation::Baseline).unwrap();
        assert_eq!(a.common_rate, 0.0);
        assert_eq!(a.method, RateMethod::GammaBaseline);
    }

    #[test]
    fn no_private_power_gives_zero_private_rate() {
        let c = cfg(16, 4, 0.5, 0.0, 20.0);
        let x = lemma1_params(16, 4, 0.5).unwrap();
        assert_eq!(approx_private_rate(&c, 0, &x).unwrap(), 0.0);
        assert!(approx_private_rate(&c, 4, &x).is_err());
    }

    // Straight-line oracle: its own loop, own SINR formula, own averaging.
    fn brute_force_sum_rate(c: &SystemConfig) -> (f64, f64) {
        let (nt, k) = (c.nt(), c.k());
        let s = c.snr()[0];
        let mut totals = Vec::new();
        for t in 0..c.trials() {
            let mut rng = RngStream::new(c.seed(), t);
            let pair = draw_channel_pair(&mut rng, c).unwrap();
            let pre = crate::precoding::zf_precoders(&pair.h_prev, &mut rng).unwrap();
            let mut total = 0.0;
            let mut min_gc = f64::INFINITY;
            for u in 0..k {
                let pw = |j: usize| -> f64 {
                    let mut acc = num_complex::Complex64::new(0.0, 0.0);
                    for i in 0..nt {
                        acc += pair.h_now[(i, u)].conj() * pre.private[(i, j)];
                    }
                    acc.norm_sqr()
                };
                let mut c_acc = num_complex::Complex64::new(0.0, 0.0);
                for i in 0..nt {
                    c_acc += pair.h_now[(i, u)].conj() * pre.common.as_slice()[i];
                }
                let all: f64 = (0..k).map(pw).sum();
                let own = pw(u);
                let a = s * c.tau() / k as f64;
                min_gc = min_gc.min(s * (1.0 - c.tau()) * c_acc.norm_sqr() / (1.0 + a * all));
                total += (1.0 + a * own / (1.0 + a * (all - own))).log2();
            }
            totals.push(total + (1.0 + min_gc).log2());
        }
        let n = totals.len() as f64;
        let m = totals.iter().sum::<f64>() / n;
        let var = totals.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (var / n).sqrt())
    }

    #[test]
    fn mc_matches_brute_force_oracle() {
        let c = cfg(16, 4, 0.5, 1.0, 20.0).with_trials(100_000).with_seed(8);
        let r = mc_sum_rate(&c).unwrap();
        let (oracle, se) = brute_force_sum_rate(&c);
        assert!((r.sum_rate - oracle).abs() < 3.0 * se.max(r.sum_se), "{} vs {oracle}", r.sum_rate);
    }

    #[test]
    fn rc_split_agrees_with_brute_force() {
        let c = cfg(8, 2, 0.7, 0.6, 10.0).with_trials(3000).with_seed(2);
        let r = mc_sum_rate(&c).unwrap();
        let (oracle, _) = brute_force_sum_rate(&c);
        assert!((r.sum_rate - oracle).abs() < 1e-9);
    }

    #[test]
    fn single_user_quadrature_matches_gamma_sampling() {
        // K = 1, e = 1, N_t = 2, S = 1, tau = 1: X ~ Gamma(2, 1), Z = 0.
        let c = cfg(2, 1, 1.0, 1.0, 0.0);
        let x = GammaParams::new(2.0, 1.0).unwrap();
        let quad = approx_private_rate(&c, 0, &x).unwrap();
        let mut rng = RngStream::new(12, 0);
        let draws = gamma_variates(&mut rng, &x, 10_000_000).unwrap();
        let logs: Vec<f64> = draws.iter().map(|v| v.ln_1p() / std::f64::consts::LN_2).collect();
        assert!((quad - mean(&logs)).abs() < 1e-3, "{quad} vs {}", mean(&logs));
    }

    #[test]
    fn baseline_overestimates_private_rate() {
        let c = cfg(16, 4, 0.3, 1.0, 20.0);
        let l = approx_private_rate(&c, 0, &lemma1_params(16, 4, 0.3).unwrap()).unwrap();
        let b = approx_private_rate(&c, 0, &baseline_params(16, 4, 0.3).unwrap()).unwrap();
        assert!(l < b, "{l} vs {b}");
    }

    #[test]
    fn reports_are_deterministic_and_consistent() {
        let c = cfg(8, 3, 0.6, 0.7, 15.0).with_trials(3000).with_seed(4);
        let a = compare_rates(&c).unwrap();
        let b = compare_rates(&c).unwrap();
        assert_eq!(a, b);
        for r in &a {
            assert!((r.sum_rate - r.common_rate - r.private_rates.iter().sum::<f64>()).abs() < 1e-12);
            assert!(r.common_rate >= 0.0 && r.private_rates.iter().all(|&v| v >= 0.0));
        }
        assert_eq!(a[1].common_rate, a[0].common_rate);
        assert_eq!(a[2].common_rate, a[0].common_rate);
        let alone = approx_sum_rate(&c, Approximation::Lemma1).unwrap();
        assert_eq!(alone.common_rate, a[0].common_rate);
    }

    #[test]
    fn sum_rate_grows_with_snr() {
        let mut last = 0.0;
        for snr in [0.0, 5.0, 10.0, 20.0, 30.0] {
            let r = mc_sum_rate(&cfg(8, 2, 0.8, 0.5, snr).with_trials(3000).with_seed(5)).unwrap();
            assert!(r.sum_rate >= last);
            last = r.sum_rate;
        }
    }
}
