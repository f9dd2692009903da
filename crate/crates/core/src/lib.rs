//! Monte Carlo simulation and Gamma surrogate models for the downlink SINR of
//! zero-forcing MU-MIMO / rate-splitting (RSMA) systems whose transmitter only
//! knows an outdated channel.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: small dense complex linear algebra, `J0`, Gauss-Laguerre
//!   expectations over Gamma densities.
//! - [`randgen`]: counter-based random streams and variate generators.
//! - [`channel`], [`precoding`], [`sinr_stats`]: one Monte Carlo trial.
//! - [`gamma_approx`]: closed-form Gamma surrogates for the received power `X`.
//! - [`metrics`], [`rates`]: goodness of fit and ergodic rates.
//! - [`experiments`]: the figure-reproduction runners behind the CLI.

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod error;
pub mod experiments;
pub mod gamma_approx;
pub mod metrics;
pub mod montecarlo;
pub mod numerics;
pub mod precoding;
pub mod randgen;
pub mod rates;
pub mod sinr_stats;

pub use channel::{draw_channel_pair, jakes_epsilon, ChannelPair, MobilityParams, SystemConfig};
pub use error::{Error, Result};
pub use gamma_approx::{baseline_params, lemma1_params, moment_report, z_params, GammaParams, MomentReport};
pub use precoding::{zf_precoders, PrecoderSet};
pub use rates::{approx_private_rate, approx_sum_rate, mc_sum_rate, Approximation, RateMethod, RateReport};
pub use sinr_stats::{TrialStatistics, UserStatistics};
