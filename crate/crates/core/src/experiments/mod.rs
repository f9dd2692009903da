//! Figure-reproduction experiments and moment validation, driven by
//! [`ExperimentConfig`] and producing [`ExperimentOutput`] tables.

pub mod config;
pub mod output;

use serde::Serialize;

pub use config::{ConfigFile, ExperimentConfig, ExperimentKind, OutputFormat, Overrides};
pub use output::{Cell, ExperimentOutput, Table};

use crate::channel::SystemConfig;
use crate::error::Result;
use crate::gamma_approx::{baseline_params, lemma1_params, moment_report, GammaParams};
use crate::metrics::{estimate_pdf, gamma_pdf, ks_statistic, pdf_mse, EmpiricalPdf};
use crate::montecarlo::map_trials;
use crate::numerics::{mean, pairwise_sum, standard_error, variance};
use crate::rates::compare_rates;

/// `X` for every user of every trial, trial-major.
pub fn x_samples(cfg: &SystemConfig) -> Result<Vec<f64>> {
    Ok(map_trials(cfg, |s| s.users.iter().map(|u| u.x).collect::<Vec<_>>())?.concat())
}

/// `Z` for every user of every trial, trial-major.
pub fn z_samples(cfg: &SystemConfig) -> Result<Vec<f64>> {
    Ok(map_trials(cfg, |s| s.users.iter().map(|u| u.z).collect::<Vec<_>>())?.concat())
}

/// Empirical density of `X` against both Gamma surrogates.
#[derive(Debug, Clone, Serialize)]
pub struct PdfComparison {
    pub empirical: EmpiricalPdf,
    pub lemma1: GammaParams,
    pub baseline: GammaParams,
    pub mse_lemma1: f64,
    pub mse_baseline: f64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
}

pub fn compare_pdf(cfg: &SystemConfig, bins: usize) -> Result<PdfComparison> {
    let xs = x_samples(cfg)?;
    let empirical = estimate_pdf(&xs, bins)?;
    let lemma1 = lemma1_params(cfg.nt(), cfg.k(), cfg.epsilon())?;
    let baseline = baseline_params(cfg.nt(), cfg.k(), cfg.epsilon())?;
    Ok(PdfComparison {
        mse_lemma1: pdf_mse(&empirical, &lemma1),
        mse_baseline: pdf_mse(&empirical, &baseline),
        empirical_mean: mean(&xs),
        empirical_variance: variance(&xs),
        empirical,
        lemma1,
        baseline,
    })
}

/// One closed-form statistic against its Monte Carlo estimate.
///
/// `tolerance` is relative to `analytic`, except for the statistics whose
/// analytic value is zero by construction (`x_cc_mean`, `ks_x`), where it is
/// absolute.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub stat: &'static str,
    pub analytic: f64,
    pub empirical: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl MomentCheck {
    fn relative(stat: &'static str, analytic: f64, empirical: f64, tolerance: f64) -> Self {
        let pass = empirical == analytic || (empirical - analytic).abs() <= tolerance * analytic.abs();
        Self { stat, analytic, empirical, tolerance, pass }
    }

    fn absolute(stat: &'static str, analytic: f64, empirical: f64, tolerance: f64) -> Self {
        let pass = (empirical - analytic).abs() <= tolerance;
        Self { stat, analytic, empirical, tolerance, pass }
    }
}

pub const MEAN_TOLERANCE: f64 = 0.02;
pub const VARIANCE_TOLERANCE: f64 = 0.05;
pub const ZETA_TOLERANCE: f64 = 0.05;
pub const KS_TOLERANCE: f64 = 0.005;

/// Mean, variance, the four second-moment terms and the cross-term moments
/// of `X`, pooled over users, against their closed forms. At `epsilon` 0 and 1
/// the whole law of `X` is also checked by KS.
pub fn validate_moments(cfg: &SystemConfig) -> Result<Vec<MomentCheck>> {
    let (nt, k, eps) = (cfg.nt(), cfg.k(), cfg.epsilon());
    let e2 = eps * eps;
    let rows: Vec<[f64; 5]> = map_trials(cfg, |s| {
        s.users
            .iter()
            .map(|u| {
                let a = (1.0 - e2) * u.innovation_power;
                let b = e2 * u.outdated_power;
                [u.x, a * a, b * b, u.zeta3_sample(eps), u.x_cc]
            })
            .collect::<Vec<_>>()
    })?
    .concat();
    let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<f64>>();
    let m = |xs: &[f64]| pairwise_sum(xs) / xs.len() as f64;
    let xs = col(0);
    let cc = col(4);
    let cc2: Vec<f64> = cc.iter().map(|v| v * v).collect();
    let r = moment_report(nt, k, eps)?;

    let mut checks = vec![
        MomentCheck::relative("mean", r.mean, mean(&xs), MEAN_TOLERANCE),
        MomentCheck::relative("variance", r.variance, variance(&xs), VARIANCE_TOLERANCE),
        MomentCheck::relative("zeta1", r.zeta1, m(&col(1)), ZETA_TOLERANCE),
        MomentCheck::relative("zeta2", r.zeta2, m(&col(2)), ZETA_TOLERANCE),
        MomentCheck::relative("zeta3", r.zeta3, m(&col(3)), ZETA_TOLERANCE),
        MomentCheck::relative("zeta4", r.zeta4, m(&cc2), ZETA_TOLERANCE),
        MomentCheck::absolute("x_cc_mean", 0.0, mean(&cc), 3.0 * standard_error(&cc)),
        MomentCheck::relative("x_cc_second_moment", r.mu, m(&cc2), ZETA_TOLERANCE),
    ];
    let exact_law = if eps == 0.0 {
        Some(GammaParams::new(k as f64, 1.0)?)
    } else if eps == 1.0 {
        Some(GammaParams::new(r.phi, 1.0)?)
    } else {
        None
    };
    if let Some(law) = exact_law {
        checks.push(MomentCheck::absolute("ks_x", 0.0, ks_statistic(&xs, &law)?, KS_TOLERANCE));
    }
    Ok(checks)
}

fn system(nt: usize, k: usize, epsilon: f64, tau: f64, snr_db: f64, cfg: &ExperimentConfig) -> Result<SystemConfig> {
    Ok(SystemConfig::new(nt, k, epsilon, tau, snr_db)?.with_seed(cfg.seed).with_trials(cfg.trials))
}

pub fn run_pdf_compare(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (nt, k, eps) = (cfg.nt[0], cfg.k[0], cfg.epsilon[0]);
    log::info!("pdf-compare: N_t = {nt}, K = {k}, epsilon = {eps}, {} trials", cfg.trials);
    let cmp = compare_pdf(&system(nt, k, eps, 1.0, cfg.snr_db[0], cfg)?, cfg.bins)?;
    let mut table = Table::new(&["x", "emp_density", "lemma1_density", "baseline_density"]);
    for (x, &d) in cmp.empirical.midpoints().into_iter().zip(cmp.empirical.density()) {
        table.push(vec![x.into(), d.into(), gamma_pdf(&cmp.lemma1, x).into(), gamma_pdf(&cmp.baseline, x).into()]);
    }
    table.summary = vec![
        ("mse_lemma1".into(), cmp.mse_lemma1.into()),
        ("mse_baseline".into(), cmp.mse_baseline.into()),
        ("empirical_mean".into(), cmp.empirical_mean.into()),
        ("empirical_variance".into(), cmp.empirical_variance.into()),
        ("lemma1_mean".into(), cmp.lemma1.mean().into()),
        ("lemma1_variance".into(), cmp.lemma1.variance().into()),
        ("baseline_mean".into(), cmp.baseline.mean().into()),
        ("baseline_variance".into(), cmp.baseline.variance().into()),
        ("samples".into(), cmp.empirical.sample_count().into()),
    ];
    Ok(ExperimentOutput { config: cfg.clone(), table })
}

pub fn run_mse_sweep(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let eps = cfg.epsilon[0];
    let mut table = Table::new(&["K", "Nt", "ratio", "mse_lemma1", "mse_baseline", "trials", "seed"]);
    for &k in &cfg.k {
        for &ratio in &cfg.ratio {
            let nt = ratio * k;
            log::info!("mse-sweep: K = {k}, N_t = {nt}");
            let cmp = compare_pdf(&system(nt, k, eps, 1.0, cfg.snr_db[0], cfg)?, cfg.bins)?;
            table.push(vec![
                k.into(),
                nt.into(),
                ratio.into(),
                cmp.mse_lemma1.into(),
                cmp.mse_baseline.into(),
                cfg.trials.into(),
                cfg.seed.into(),
            ]);
        }
    }
    Ok(ExperimentOutput { config: cfg.clone(), table })
}

pub fn run_sumrate_sweep(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (nt, k, snr) = (cfg.nt[0], cfg.k[0], cfg.snr_db[0]);
    let mut table = Table::new(&["epsilon", "tau", "rate_mc", "rate_lemma1", "rate_baseline", "se_mc"]);
    for &eps in &cfg.epsilon {
        for &tau in &cfg.tau {
            log::info!("sumrate-sweep: epsilon = {eps}, tau = {tau}");
            let [mc, lemma1, baseline] = compare_rates(&system(nt, k, eps, tau, snr, cfg)?)?;
            table.push(vec![
                eps.into(),
                tau.into(),
                mc.sum_rate.into(),
                lemma1.sum_rate.into(),
                baseline.sum_rate.into(),
                mc.sum_se.into(),
            ]);
        }
    }
    Ok(ExperimentOutput { config: cfg.clone(), table })
}

pub fn run_validate_moments(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let mut table = Table::new(&["Nt", "K", "epsilon", "stat", "analytic", "empirical", "tolerance", "pass"]);
    for &nt in &cfg.nt {
        for &k in &cfg.k {
            for &eps in &cfg.epsilon {
                log::info!("validate-moments: N_t = {nt}, K = {k}, epsilon = {eps}");
                for c in validate_moments(&system(nt, k, eps, 1.0, cfg.snr_db[0], cfg)?)? {
                    if !c.pass {
                        log::warn!("N_t = {nt}, K = {k}, epsilon = {eps}: {} outside tolerance", c.stat);
                    }
                    table.push(vec![
                        nt.into(),
                        k.into(),
                        eps.into(),
                        c.stat.into(),
                        c.analytic.into(),
                        c.empirical.into(),
                        c.tolerance.into(),
                        c.pass.into(),
                    ]);
                }
            }
        }
    }
    Ok(ExperimentOutput { config: cfg.clone(), table })
}

pub fn run(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    match cfg.kind {
        ExperimentKind::PdfCompare => run_pdf_compare(cfg),
        ExperimentKind::MseSweep => run_mse_sweep(cfg),
        ExperimentKind::SumrateSweep => run_sumrate_sweep(cfg),
        ExperimentKind::ValidateMoments => run_validate_moments(cfg),
    }
}
