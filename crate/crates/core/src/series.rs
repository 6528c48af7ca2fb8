use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A uniformly sampled real-valued series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    samples: Vec<f64>,
    dt: f64,
    label: String,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, dt: f64, label: impl Into<String>) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("time series must contain at least one sample"));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(invalid(format!("sample interval must be positive, got {dt}")));
        }
        Ok(Self {
            samples,
            dt,
            label: label.into(),
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate(&self) -> f64 {
        1.0 / self.dt
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Same sampling grid, new values.
    pub(crate) fn with_samples(&self, samples: Vec<f64>, label: impl Into<String>) -> Self {
        debug_assert!(!samples.is_empty());
        Self {
            samples,
            dt: self.dt,
            label: label.into(),
        }
    }

    /// First `n` samples (or all of them if shorter).
    pub fn truncated(&self, n: usize) -> Self {
        let n = n.clamp(1, self.samples.len());
        self.with_samples(self.samples[..n].to_vec(), self.label.clone())
    }

    pub fn is_bipolar(&self) -> bool {
        self.samples.iter().all(|&v| v == 1.0 || v == -1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_bad_dt() {
        assert!(TimeSeries::new(vec![], 1.0, "x").is_err());
        assert!(TimeSeries::new(vec![1.0], 0.0, "x").is_err());
        assert!(TimeSeries::new(vec![1.0], -1.0, "x").is_err());
        assert!(TimeSeries::new(vec![1.0], f64::NAN, "x").is_err());
    }
}
