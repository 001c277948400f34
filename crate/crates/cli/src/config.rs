//! Run configuration: command-line flags over a `.uni` file over defaults.

use std::path::Path;

use axcheck_core::meta::DEFAULT_SIZE_BOUND;
use axcheck_core::{IsoMode, DEFAULT_QUANTIFIER_CAP};
use serde::{Deserialize, Serialize};

use crate::UsageError;

/// Settings that affect results. Echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u32,
    pub mode: IsoMode,
    pub cap: u64,
    pub bound: usize,
    pub limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { n: 2, mode: IsoMode::Tarski, cap: DEFAULT_QUANTIFIER_CAP, bound: DEFAULT_SIZE_BOUND, limit: 50 }
    }
}

/// Values that may come from either source; `None` means unset.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n: Option<u32>,
    pub mode: Option<IsoMode>,
    pub cap: Option<u64>,
    pub bound: Option<usize>,
    pub limit: Option<usize>,
    pub json: Option<bool>,
    pub jobs: Option<usize>,
}

impl Overrides {
    /// `self` wins over `lower` field by field.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            n: self.n.or(lower.n),
            mode: self.mode.or(lower.mode),
            cap: self.cap.or(lower.cap),
            bound: self.bound.or(lower.bound),
            limit: self.limit.or(lower.limit),
            json: self.json.or(lower.json),
            jobs: self.jobs.or(lower.jobs),
        }
    }

    pub fn resolve(&self) -> Result<RunConfig, UsageError> {
        let d = RunConfig::default();
        let cfg = RunConfig {
            n: self.n.unwrap_or(d.n),
            mode: self.mode.unwrap_or(d.mode),
            cap: self.cap.unwrap_or(d.cap),
            bound: self.bound.unwrap_or(d.bound),
            limit: self.limit.unwrap_or(d.limit),
        };
        if cfg.n == 0 {
            return Err(UsageError("n must be at least 1".into()));
        }
        if cfg.cap == 0 {
            return Err(UsageError("cap must be positive".into()));
        }
        Ok(cfg)
    }
}

/// Reads `key=value` lines. Blank lines and lines starting with `#` or
/// `//` are skipped.
pub fn parse_uni(text: &str) -> Result<Overrides, UsageError> {
    let mut o = Overrides::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("//") {
            continue;
        }
        let bad = |what: &str| UsageError(format!("config line {}: {what}: `{line}`", i + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| v.parse::<u64>().map_err(|_| bad("expected a non-negative integer"));
        match key {
            "n" => o.n = Some(u32::try_from(num(value)?).map_err(|_| bad("n too large"))?),
            "mode" => o.mode = Some(value.parse().map_err(|e: String| bad(&e))?),
            "cap" => o.cap = Some(num(value)?),
            "bound" => o.bound = Some(num(value)? as usize),
            "limit" => o.limit = Some(num(value)? as usize),
            "jobs" => o.jobs = Some(num(value)? as usize),
            "format" => {
                o.json = Some(match value {
                    "json" => true,
                    "text" => false,
                    _ => return Err(bad("format is json or text")),
                })
            }
            _ => return Err(bad("unknown key")),
        }
    }
    Ok(o)
}

pub fn load_uni(path: &Path) -> Result<Overrides, UsageError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    parse_uni(&text)
}
