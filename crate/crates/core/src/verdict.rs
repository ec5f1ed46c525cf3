//! Check modes and the outcome record shared by all pointwise checkers.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::formula::Assignment;
use crate::packed::DEFAULT_EXHAUSTIVE_LIMIT;

/// Samples drawn when an exhaustive request exceeds the variable bound.
pub const DEFAULT_FALLBACK_SAMPLES: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    pub exhaustive_limit: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: CheckMode::Exhaustive,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

impl From<CheckMode> for CheckOptions {
    fn from(mode: CheckMode) -> Self {
        CheckOptions {
            mode,
            ..Default::default()
        }
    }
}

impl CheckOptions {
    pub fn sampled(samples: u64, seed: u64) -> Self {
        CheckMode::Sampled { samples, seed }.into()
    }

    /// The mode actually run for `num_vars` variables, and whether it was
    /// switched from exhaustive to sampled.
    pub fn effective(&self, num_vars: usize) -> (CheckMode, bool) {
        match self.mode {
            CheckMode::Exhaustive if num_vars > self.exhaustive_limit.min(63) => (
                CheckMode::Sampled {
                    samples: DEFAULT_FALLBACK_SAMPLES,
                    seed: 0,
                },
                true,
            ),
            m => (m, false),
        }
    }
}

pub(crate) fn sampler(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Upper bound on the chance that `samples` uniform points all miss a
/// nonzero function of degree at most `degree` on the Boolean cube (such a
/// function is nonzero on at least a `2^-degree` fraction of points).
pub fn miss_probability(samples: u64, degree: usize) -> f64 {
    let eps = 0.5f64.powi(degree.min(1000) as i32);
    (1.0 - eps).powf(samples as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeTag {
    Exhaustive,
    Sampled,
}

/// Outcome of a pointwise check. Failures carry a witness assignment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_witness")]
    pub witness: Option<Assignment>,
    pub mode: ModeTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Set when an exhaustive request was downgraded to sampling.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub auto_sampled: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub miss_probability: Option<f64>,
    /// Index of the failing step, for proof-log checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub checked: u64,
}

fn ser_witness<S: Serializer>(w: &Option<Assignment>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(a) => s.serialize_str(&a.to_string()),
        None => s.serialize_none(),
    }
}

impl Verdict {
    pub(crate) fn new(mode: CheckMode, auto_sampled: bool) -> Self {
        let (tag, samples, seed) = match mode {
            CheckMode::Exhaustive => (ModeTag::Exhaustive, None, None),
            CheckMode::Sampled { samples, seed } => (ModeTag::Sampled, Some(samples), Some(seed)),
        };
        Verdict {
            pass: true,
            witness: None,
            mode: tag,
            samples,
            seed,
            auto_sampled,
            miss_probability: None,
            step: None,
            detail: None,
            checked: 0,
        }
    }

    pub(crate) fn fail(mut self, witness: Assignment, detail: String) -> Self {
        self.pass = false;
        self.witness = Some(witness);
        self.detail = Some(detail);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "pass ({} assignments", self.checked)?;
            if let Some(p) = self.miss_probability {
                write!(f, ", miss probability <= {p:.3e}")?;
            }
            write!(f, ")")
        } else {
            write!(f, "FAIL")?;
            if let Some(s) = self.step {
                write!(f, " at step {s}")?;
            }
            if let Some(w) = &self.witness {
                write!(f, " witness {w}")?;
            }
            if let Some(d) = &self.detail {
                write!(f, ": {d}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_downgrades_above_limit() {
        let opts = CheckOptions::default();
        assert_eq!(opts.effective(24), (CheckMode::Exhaustive, false));
        assert!(matches!(opts.effective(25), (CheckMode::Sampled { .. }, true)));
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict::new(CheckMode::Sampled { samples: 10, seed: 7 }, false);
        let json: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(json["pass"], true);
        assert_eq!(json["mode"], "sampled");
        assert_eq!(json["samples"], 10);
        assert_eq!(json["seed"], 7);
        assert!(json.get("witness").is_none());
        let v = Verdict::new(CheckMode::Exhaustive, false).fail(Assignment::from_bits(&[false, true]), "x".into());
        let json: serde_json::Value = serde_json::from_str(&v.to_json()).unwrap();
        assert_eq!(json["witness"], "01");
        assert_eq!(json["pass"], false);
    }

    #[test]
    fn miss_probability_shrinks() {
        assert!(miss_probability(1000, 2) < 1e-100);
        assert!((miss_probability(1, 1) - 0.5).abs() < 1e-12);
    }
}
