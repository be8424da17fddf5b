use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NEG_SLACK: f64 = 1e-12;
const SUM_SLACK: f64 = 1e-10;

/// A nonnegative vector summing to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Accepts entries down to `-1e-12` and a sum within `1e-10` of one;
    /// entries are then clamped to `[0, 1]` and renormalized.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < -NEG_SLACK)
        {
            return Err(Error::InvalidDistribution(format!("entry {i} = {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_SLACK {
            return Err(Error::InvalidDistribution(format!("sums to {sum}")));
        }
        let mut probs: Vec<f64> = probs.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let sum: f64 = probs.iter().sum();
        if sum != 1.0 {
            probs.iter_mut().for_each(|p| *p /= sum);
        }
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    /// All mass on outcome `k` of `n`.
    pub fn deterministic(n: usize, k: usize) -> Self {
        let mut probs = vec![0.0; n];
        probs[k] = 1.0;
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<f64>> for ProbabilityDistribution {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ProbabilityDistribution> for Vec<f64> {
    fn from(p: ProbabilityDistribution) -> Self {
        p.probs
    }
}
