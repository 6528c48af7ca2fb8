use serde::{Deserialize, Serialize};

use crate::detectors::{apply_scaled, DetectorSpec};
use crate::error::{invalid, Result};
use crate::exec::{map_indexed, Execution};
use crate::objectives::{evaluate, BinningSpec, Measurement, Objective, ObjectiveSample, ObjectiveSet};
use crate::rng::{derive_seed, role};
use crate::series::TimeSeries;
use crate::signals::{standard_normal, SignalSource};

pub const MIN_SAMPLES_PER_POINT: usize = 1000;

fn default_lags() -> Vec<usize> {
    vec![1]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub signal: SignalSource,
    pub detector: DetectorSpec,
    /// Noise standard deviations, strictly increasing and non-negative.
    pub sigma_grid: Vec<f64>,
    pub samples_per_point: usize,
    pub replicates: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub objectives: ObjectiveSet,
    #[serde(default)]
    pub binning: BinningSpec,
    /// Lags for the RMS autocorrelation.
    #[serde(default = "default_lags")]
    pub ac_lags: Vec<usize>,
}

impl SweepConfig {
    pub fn new(signal: SignalSource, detector: DetectorSpec, sigma_grid: Vec<f64>) -> Self {
        Self {
            signal,
            detector,
            sigma_grid,
            samples_per_point: 100_000,
            replicates: 5,
            master_seed: 0,
            objectives: ObjectiveSet::all(),
            binning: BinningSpec::default(),
            ac_lags: default_lags(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sigma_grid.is_empty() {
            return Err(invalid("sigma_grid is empty"));
        }
        if let Some(bad) = self.sigma_grid.iter().find(|s| !(s.is_finite() && **s >= 0.0)) {
            return Err(invalid(format!("sigma_grid contains invalid noise level {bad}")));
        }
        if self.sigma_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(invalid("sigma_grid must be strictly increasing"));
        }
        if self.samples_per_point < MIN_SAMPLES_PER_POINT {
            return Err(invalid(format!(
                "samples_per_point must be at least {MIN_SAMPLES_PER_POINT}, got {}",
                self.samples_per_point
            )));
        }
        if self.replicates == 0 {
            return Err(invalid("replicates must be at least 1"));
        }
        if self.ac_lags.is_empty() || self.ac_lags.iter().any(|&l| l == 0 || l >= self.samples_per_point) {
            return Err(invalid(
                "ac_lags must be non-empty positive lags shorter than the series",
            ));
        }
        self.binning.validate()?;
        self.detector.validate()
    }
}

/// Replicate standard errors of the main objectives.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectiveSe {
    pub mi_bits: f64,
    pub cc: f64,
    pub ac_lag1: f64,
    pub ac_rms: f64,
    pub q_hat: Option<f64>,
    pub snr_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub sigma: f64,
    /// Replicate means; `degenerate` is set only if every replicate was.
    pub mean: ObjectiveSample,
    pub se: ObjectiveSe,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceCurve {
    pub config: SweepConfig,
    pub points: Vec<CurvePoint>,
}

impl ResonanceCurve {
    pub fn sigmas(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.sigma).collect()
    }

    /// Value used when maximizing `objective`; `None` where it is absent or
    /// degenerate. The autocorrelation is compared by magnitude.
    pub fn score(&self, index: usize, objective: Objective) -> Option<f64> {
        let m = &self.points[index].mean;
        let v = match objective {
            Objective::Mi => Some(m.mi_bits),
            Objective::Cc => (!m.degenerate).then_some(m.cc),
            Objective::Ac => (!m.degenerate).then_some(m.ac_lag1.abs()),
            Objective::AcRms => (!m.degenerate).then_some(m.ac_rms),
            Objective::Q => m.q_hat,
            Objective::Snr => m.snr_db,
        };
        v.filter(|x| !x.is_nan())
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<ResonanceCurve> {
    run_sweep_with(config, Execution::default())
}

pub fn run_sweep_with(config: &SweepConfig, exec: Execution) -> Result<ResonanceCurve> {
    config.validate()?;
    let n = config.samples_per_point;
    let reps = config.replicates;
    let signals: Vec<TimeSeries> = map_indexed(reps, exec, |r| {
        config
            .signal
            .generate(n, derive_seed(config.master_seed, &[role::SIGNAL, r as u64]))
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let stimulus = config.signal.stimulus_freq().filter(|_| config.objectives.snr);
    let bipolar: Vec<bool> = signals.iter().map(TimeSeries::is_bipolar).collect();
    let zeros = stimulus.map(|_| vec![0.0; n]);

    let jobs = config.sigma_grid.len() * reps;
    let samples: Vec<ObjectiveSample> = map_indexed(jobs, exec, |job| {
        let (i, r) = (job / reps, job % reps);
        let sigma = config.sigma_grid[i];
        let seed = |tag| derive_seed(config.master_seed, &[tag, i as u64, r as u64]);
        let z = standard_normal(n, seed(role::NOISE));
        let signal = &signals[r];
        let output = apply_scaled(&config.detector, signal.samples(), &z, sigma, seed(role::COIN))?;
        let noise_only = match &zeros {
            Some(zeros) => Some(apply_scaled(&config.detector, zeros, &z, sigma, seed(role::COIN))?),
            None => None,
        };
        let m = Measurement {
            signal: signal.samples(),
            output: &output,
            noise_only: noise_only.as_deref(),
            dt: signal.dt(),
            stimulus_freq: stimulus,
            signal_is_bipolar: bipolar[r],
        };
        evaluate(&m, &config.objectives, &config.binning, &config.ac_lags)
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let points = config
        .sigma_grid
        .iter()
        .zip(samples.chunks(reps))
        .map(|(&sigma, reps)| aggregate(sigma, reps))
        .collect();
    Ok(ResonanceCurve {
        config: config.clone(),
        points,
    })
}

fn mean_se(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    if n < 2.0 {
        return (mean, 0.0);
    }
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn mean_se_opt(values: &[Option<f64>]) -> (Option<f64>, Option<f64>) {
    if values.iter().all(Option::is_some) {
        let (m, s) = mean_se(values.iter().map(|v| v.unwrap()));
        (Some(m), Some(s))
    } else {
        (None, None)
    }
}

fn aggregate(sigma: f64, reps: &[ObjectiveSample]) -> CurvePoint {
    let (mi, mi_se) = mean_se(reps.iter().map(|s| s.mi_bits));
    let (cc, cc_se) = mean_se(reps.iter().map(|s| s.cc));
    let (ac, ac_se) = mean_se(reps.iter().map(|s| s.ac_lag1));
    let (rms, rms_se) = mean_se(reps.iter().map(|s| s.ac_rms));
    let (q, q_se) = mean_se_opt(&reps.iter().map(|s| s.q_hat).collect::<Vec<_>>());
    let (snr, snr_se) = mean_se_opt(&reps.iter().map(|s| s.snr_db).collect::<Vec<_>>());
    CurvePoint {
        sigma,
        mean: ObjectiveSample {
            mi_bits: mi,
            cc,
            ac_lag1: ac,
            ac_rms: rms,
            q_hat: q,
            snr_db: snr,
            degenerate: reps.iter().all(|s| s.degenerate),
        },
        se: ObjectiveSe {
            mi_bits: mi_se,
            cc: cc_se,
            ac_lag1: ac_se,
            ac_rms: rms_se,
            q_hat: q_se,
            snr_db: snr_se,
        },
    }
}
