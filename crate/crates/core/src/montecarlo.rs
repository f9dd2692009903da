//! Trial engine. Trial `t` is a pure function of `(seed, t, cfg)`, and results
//! come back in trial order, so any worker count gives identical output.

use rayon::prelude::*;

use crate::channel::{draw_channel_pair, ChannelPair, SystemConfig};
use crate::error::{Error, Result};
use crate::precoding::{zf_precoders, PrecoderSet};
use crate::randgen::RngStream;
use crate::sinr_stats::TrialStatistics;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "RSMA_SINR_WORKERS";

/// Redraws allowed when the outdated channel has a singular Gram matrix.
pub const MAX_REDRAWS: u32 = 8;

/// Channel pair and precoders for one trial. A singular draw is replaced by
/// the next draw on the same stream.
pub fn simulate_trial(cfg: &SystemConfig, trial: u64) -> Result<(ChannelPair, PrecoderSet)> {
    let mut rng = RngStream::new(cfg.seed(), trial);
    let mut last = None;
    for _ in 0..=MAX_REDRAWS {
        let pair = draw_channel_pair(&mut rng, cfg)?;
        match zf_precoders(&pair.h_prev, &mut rng) {
            Ok(pre) => return Ok((pair, pre)),
            Err(e @ Error::SingularGram { .. }) => {
                log::debug!("trial {trial}: singular outdated channel, redrawing");
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

pub fn trial_statistics(cfg: &SystemConfig, trial: u64) -> Result<TrialStatistics> {
    let (pair, pre) = simulate_trial(cfg, trial)?;
    Ok(TrialStatistics::compute(&pair, &pre, cfg))
}

/// `f(0..cfg.trials())` in trial order on the current rayon pool.
pub fn map_trials<T, F>(cfg: &SystemConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(TrialStatistics) -> T + Sync + Send,
{
    (0..cfg.trials()).into_par_iter().map(|t| trial_statistics(cfg, t).map(&f)).collect()
}

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn worker_count() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(Error::config(WORKERS_ENV, format!("expected a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs `f` inside a dedicated pool of `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::mean;

    #[test]
    fn trials_are_reproducible() {
        let cfg = SystemConfig::new(8, 2, 0.7, 0.5, 10.0).unwrap().with_seed(17);
        let (a, pa) = simulate_trial(&cfg, 5).unwrap();
        let (b, pb) = simulate_trial(&cfg, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        let (c, _) = simulate_trial(&cfg, 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = SystemConfig::new(8, 3, 0.5, 0.6, 20.0).unwrap().with_trials(2000).with_seed(3);
        let run = |n| with_workers(n, || map_trials(&cfg, |s| s.users[1].gamma_p).unwrap()).unwrap();
        let one = run(1);
        assert_eq!(one.len(), 2000);
        assert_eq!(one, run(4));
        assert_eq!(one, run(8));
    }

    #[test]
    fn sample_means_match_closed_forms() {
        let cfg = SystemConfig::new(16, 4, 0.5, 1.0, 20.0).unwrap().with_trials(200_000).with_seed(1);
        let per: Vec<[f64; 3]> = map_trials(&cfg, |s| {
            let u = s.users[0];
            [u.x, u.z, u.x_cc]
        })
        .unwrap();
        let col = |i: usize| per.iter().map(|r| r[i]).collect::<Vec<_>>();
        let (x, z, cc) = (col(0), col(1), col(2));
        assert!((mean(&x) / 6.25 - 1.0).abs() < 0.02, "E[X] = {}", mean(&x));
        assert!((mean(&z) / 2.25 - 1.0).abs() < 0.02, "E[Z] = {}", mean(&z));
        assert!(mean(&cc).abs() < 0.02);
        let cc2: Vec<f64> = cc.iter().map(|v| v * v).collect();
        assert!((mean(&cc2) / 4.875 - 1.0).abs() < 0.03, "E[X_CC^2] = {}", mean(&cc2));
    }
}
