//! Experiment configuration: a flat TOML document, per-experiment defaults,
//! and command-line overrides.
//!
//! ```toml
//! nt = 16
//! k = 4
//! epsilon = [0.3, 0.5]
//! tau = [0.0, 0.5, 1.0]
//! snr_db = 20
//! trials = 100000
//! seed = 1
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::channel::DEFAULT_TRIALS;
use crate::error::{Error, Result};
use crate::metrics::DEFAULT_BINS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    PdfCompare,
    MseSweep,
    SumrateSweep,
    ValidateMoments,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::PdfCompare => "pdf-compare",
            ExperimentKind::MseSweep => "mse-sweep",
            ExperimentKind::SumrateSweep => "sumrate-sweep",
            ExperimentKind::ValidateMoments => "validate-moments",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A scalar or a list in the config file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> From<OneOrMany<T>> for Vec<T> {
    fn from(v: OneOrMany<T>) -> Self {
        match v {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

/// Contents of a config file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    kind: Option<ExperimentKind>,
    nt: Option<OneOrMany<usize>>,
    k: Option<OneOrMany<usize>>,
    epsilon: Option<OneOrMany<f64>>,
    tau: Option<OneOrMany<f64>>,
    snr_db: Option<OneOrMany<f64>>,
    ratio: Option<OneOrMany<usize>>,
    bins: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let message = e.message().to_string();
            let field = unknown_field(&message).unwrap_or_else(|| "config".into());
            Error::config(field, message)
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("--config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

fn unknown_field(message: &str) -> Option<String> {
    let rest = message.strip_prefix("unknown field `")?;
    Some(rest[..rest.find('`')?].to_string())
}

/// Command-line values; these win over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub bins: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

/// Fully resolved experiment. Axis meaning per kind:
///
/// - `pdf-compare`: one `nt`, one `k`, one `epsilon`.
/// - `mse-sweep`: `k` and `ratio` lists (`N_t = ratio * K`), one `epsilon`.
/// - `sumrate-sweep`: one `nt`, `k`, `snr_db`; `epsilon` and `tau` lists.
/// - `validate-moments`: every combination of `nt`, `k`, `epsilon`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub nt: Vec<usize>,
    pub k: Vec<usize>,
    pub epsilon: Vec<f64>,
    pub tau: Vec<f64>,
    pub snr_db: Vec<f64>,
    pub ratio: Vec<usize>,
    pub bins: usize,
    pub trials: u64,
    pub seed: u64,
    pub format: OutputFormat,
    /// Not part of the provenance header, so the same run written to two
    /// paths produces identical bytes.
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = Self {
            kind,
            nt: vec![16],
            k: vec![4],
            epsilon: vec![0.5],
            tau: vec![1.0],
            snr_db: vec![20.0],
            ratio: vec![2, 4, 8, 16],
            bins: DEFAULT_BINS,
            trials: DEFAULT_TRIALS,
            seed: 1,
            format: OutputFormat::Csv,
            out: None,
        };
        match kind {
            ExperimentKind::PdfCompare => Self { nt: vec![256], k: vec![8], ..base },
            ExperimentKind::MseSweep => Self { k: vec![4, 6, 10], ..base },
            ExperimentKind::SumrateSweep => {
                Self { epsilon: vec![0.3, 0.5], tau: (0..=10).map(|i| i as f64 / 10.0).collect(), ..base }
            }
            ExperimentKind::ValidateMoments => Self { epsilon: vec![0.0, 0.3, 0.5, 0.6, 0.8, 1.0], ..base },
        }
    }

    /// Defaults, then the file, then the overrides; validated.
    pub fn resolve(kind: ExperimentKind, file: ConfigFile, overrides: Overrides) -> Result<Self> {
        if let Some(k) = file.kind {
            if k != kind {
                return Err(Error::config(
                    "kind",
                    format!("file is for `{}` but `{}` was requested", k.as_str(), kind.as_str()),
                ));
            }
        }
        let mut cfg = Self::defaults(kind);
        if let Some(v) = file.nt {
            cfg.nt = v.into();
        }
        if let Some(v) = file.k {
            cfg.k = v.into();
        }
        if let Some(v) = file.epsilon {
            cfg.epsilon = v.into();
        }
        if let Some(v) = file.tau {
            cfg.tau = v.into();
        }
        if let Some(v) = file.snr_db {
            cfg.snr_db = v.into();
        }
        if let Some(v) = file.ratio {
            cfg.ratio = v.into();
        }
        cfg.bins = overrides.bins.or(file.bins).unwrap_or(cfg.bins);
        cfg.trials = overrides.trials.or(file.trials).unwrap_or(cfg.trials);
        cfg.seed = overrides.seed.or(file.seed).unwrap_or(cfg.seed);
        cfg.format = overrides.format.or(file.format).unwrap_or(cfg.format);
        cfg.out = overrides.out.or(file.out);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        use ExperimentKind::*;
        let single = |name: &str, len: usize| -> Result<()> {
            if len != 1 {
                return Err(Error::config(
                    name,
                    format!("`{}` takes exactly one value, got {len}", self.kind.as_str()),
                ));
            }
            Ok(())
        };
        let nonempty = |name: &str, len: usize| -> Result<()> {
            if len == 0 {
                return Err(Error::config(name, "sweep axis is empty"));
            }
            Ok(())
        };
        match self.kind {
            PdfCompare => {
                single("nt", self.nt.len())?;
                single("k", self.k.len())?;
                single("epsilon", self.epsilon.len())?;
            }
            MseSweep => {
                nonempty("k", self.k.len())?;
                nonempty("ratio", self.ratio.len())?;
                single("epsilon", self.epsilon.len())?;
            }
            SumrateSweep => {
                single("nt", self.nt.len())?;
                single("k", self.k.len())?;
                single("snr_db", self.snr_db.len())?;
                nonempty("epsilon", self.epsilon.len())?;
                nonempty("tau", self.tau.len())?;
            }
            ValidateMoments => {
                nonempty("nt", self.nt.len())?;
                nonempty("k", self.k.len())?;
                nonempty("epsilon", self.epsilon.len())?;
            }
        }
        for (i, &k) in self.k.iter().enumerate() {
            if k == 0 {
                return Err(Error::config(format!("k[{i}]"), "K must be at least 1"));
            }
        }
        if self.kind == MseSweep {
            for (i, &r) in self.ratio.iter().enumerate() {
                if r < 2 {
                    return Err(Error::config(
                        format!("ratio[{i}]"),
                        format!("N_t/K = {r} violates the system-model constraint N_t > K"),
                    ));
                }
            }
        } else {
            for (i, &nt) in self.nt.iter().enumerate() {
                for &k in &self.k {
                    if nt <= k {
                        return Err(Error::config(
                            format!("nt[{i}]"),
                            format!("N_t = {nt}, K = {k} violates the system-model constraint N_t > K"),
                        ));
                    }
                }
            }
        }
        for (i, &e) in self.epsilon.iter().enumerate() {
            if !(0.0..=1.0).contains(&e) {
                return Err(Error::config(format!("epsilon[{i}]"), format!("must lie in [0, 1], got {e}")));
            }
        }
        for (i, &t) in self.tau.iter().enumerate() {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::config(format!("tau[{i}]"), format!("must lie in [0, 1], got {t}")));
            }
        }
        for (i, &s) in self.snr_db.iter().enumerate() {
            if !s.is_finite() {
                return Err(Error::config(format!("snr_db[{i}]"), format!("must be finite, got {s}")));
            }
        }
        if self.bins < 2 {
            return Err(Error::config("bins", format!("need at least 2 bins, got {}", self.bins)));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "need at least 1 trial"));
        }
        Ok(())
    }

    /// The resolved configuration as TOML, for output headers.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Numerical(format!("serializing config: {e}")))
    }
}
