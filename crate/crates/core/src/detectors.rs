//! Threshold detectors: four memoryless transfer functions and a leaky
//! integrate-and-fire neuron.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::coin;
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DetectorSpec {
    /// Output in {-1, +1}; sub-threshold inputs produce a seeded fair coin.
    DiscreteSymmetric { theta: f64 },
    /// Output in {0, 1}: event iff input >= theta.
    DiscreteAsymmetric { theta: f64 },
    /// Dead zone of half-width theta, linear outside it.
    ContinuousSymmetric { theta: f64 },
    /// Zero below theta, `x - theta` at and above it.
    ContinuousAsymmetric { theta: f64 },
    Lif {
        theta: f64,
        tau_m: f64,
        dt: f64,
        #[serde(default)]
        x_rest: f64,
    },
}

impl DetectorSpec {
    pub fn theta(&self) -> f64 {
        match *self {
            Self::DiscreteSymmetric { theta }
            | Self::DiscreteAsymmetric { theta }
            | Self::ContinuousSymmetric { theta }
            | Self::ContinuousAsymmetric { theta }
            | Self::Lif { theta, .. } => theta,
        }
    }

    pub fn is_memoryless(&self) -> bool {
        !matches!(self, Self::Lif { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::DiscreteSymmetric { .. } => "discrete_symmetric",
            Self::DiscreteAsymmetric { .. } => "discrete_asymmetric",
            Self::ContinuousSymmetric { .. } => "continuous_symmetric",
            Self::ContinuousAsymmetric { .. } => "continuous_asymmetric",
            Self::Lif { .. } => "lif",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let theta = self.theta();
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(invalid(format!("detector threshold must be positive, got {theta}")));
        }
        if let Self::Lif { tau_m, dt, x_rest, .. } = *self {
            if !(tau_m > 0.0 && tau_m.is_finite()) {
                return Err(invalid(format!("tau_m must be positive, got {tau_m}")));
            }
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(invalid(format!("dt must be positive, got {dt}")));
            }
            if !(x_rest < theta) {
                return Err(invalid(format!(
                    "resting potential {x_rest} must lie below the threshold {theta}"
                )));
            }
        }
        Ok(())
    }

    /// Memoryless response to a single input value `x = s + n`.
    ///
    /// `coin` resolves the sub-threshold case of the discrete symmetric
    /// detector (`true` -> +1) and is ignored by the other kinds.
    #[inline]
    pub fn transfer(&self, x: f64, coin: bool) -> f64 {
        match *self {
            Self::ContinuousSymmetric { theta } => {
                if x > theta {
                    x - theta
                } else if x < -theta {
                    x + theta
                } else {
                    0.0
                }
            }
            Self::ContinuousAsymmetric { theta } => {
                if x >= theta {
                    x - theta
                } else {
                    0.0
                }
            }
            Self::DiscreteSymmetric { theta } => {
                if x > theta {
                    1.0
                } else if x < -theta {
                    -1.0
                } else if coin {
                    1.0
                } else {
                    -1.0
                }
            }
            Self::DiscreteAsymmetric { theta } => {
                if x >= theta {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Lif { .. } => unreachable!("transfer called on a detector with memory"),
        }
    }
}

fn check_lengths(signal: &TimeSeries, noise: &TimeSeries) -> Result<()> {
    if signal.len() != noise.len() {
        return Err(invalid(format!(
            "signal has {} samples but noise has {}",
            signal.len(),
            noise.len()
        )));
    }
    Ok(())
}

/// Per-sample output of a memoryless detector driven by `signal + noise`.
///
/// The sub-threshold coin at index `t` is a pure function of `(seed, t)`.
pub fn apply_memoryless(spec: &DetectorSpec, signal: &TimeSeries, noise: &TimeSeries, seed: u64) -> Result<TimeSeries> {
    if !spec.is_memoryless() {
        return Err(Error::WrongOperation(
            "apply_memoryless called with a lif detector; use run_lif".into(),
        ));
    }
    spec.validate()?;
    check_lengths(signal, noise)?;
    let out = memoryless_scaled(spec, signal.samples(), noise.samples(), 1.0, seed);
    Ok(signal.with_samples(out, spec.kind_name()))
}

/// `transfer(s_t + scale * z_t)` for each t; lets callers reuse one
/// standard-normal draw across noise levels.
pub(crate) fn memoryless_scaled(spec: &DetectorSpec, signal: &[f64], noise: &[f64], scale: f64, seed: u64) -> Vec<f64> {
    signal
        .iter()
        .zip(noise)
        .enumerate()
        .map(|(t, (s, n))| spec.transfer(s + scale * n, coin(seed, t as u64)))
        .collect()
}

/// Leaky integrate-and-fire membrane with exact exponential-decay updates.
#[derive(Debug, Clone)]
pub struct LifNeuron {
    theta: f64,
    x_rest: f64,
    decay: f64,
    gain: f64,
    x: f64,
}

impl LifNeuron {
    pub fn new(spec: &DetectorSpec) -> Result<Self> {
        spec.validate()?;
        match *spec {
            DetectorSpec::Lif {
                theta,
                tau_m,
                dt,
                x_rest,
            } => {
                let decay = (-dt / tau_m).exp();
                Ok(Self {
                    theta,
                    x_rest,
                    decay,
                    gain: tau_m * (1.0 - decay),
                    x: x_rest,
                })
            }
            _ => Err(Error::WrongOperation(format!(
                "{} is not an integrate-and-fire detector",
                spec.kind_name()
            ))),
        }
    }

    pub fn membrane(&self) -> f64 {
        self.x
    }

    /// Advance one sample with constant `input` over the step; returns
    /// whether a spike was emitted (the membrane is then at rest).
    #[inline]
    pub fn step(&mut self, input: f64) -> bool {
        self.x = self.x * self.decay + input * self.gain;
        if self.x >= self.theta {
            self.x = self.x_rest;
            true
        } else {
            false
        }
    }
}

/// Spike train (1 at spike samples, else 0) of a LIF neuron driven by
/// `signal + noise`.
pub fn run_lif(spec: &DetectorSpec, signal: &TimeSeries, noise: &TimeSeries) -> Result<TimeSeries> {
    check_lengths(signal, noise)?;
    let out = lif_scaled(spec, signal.samples(), noise.samples(), 1.0)?;
    Ok(signal.with_samples(out, "lif"))
}

pub(crate) fn lif_scaled(spec: &DetectorSpec, signal: &[f64], noise: &[f64], scale: f64) -> Result<Vec<f64>> {
    let mut neuron = LifNeuron::new(spec)?;
    Ok(signal
        .iter()
        .zip(noise)
        .map(|(s, n)| if neuron.step(s + scale * n) { 1.0 } else { 0.0 })
        .collect())
}

/// Dispatch on detector kind.
pub fn apply(spec: &DetectorSpec, signal: &TimeSeries, noise: &TimeSeries, seed: u64) -> Result<TimeSeries> {
    if spec.is_memoryless() {
        apply_memoryless(spec, signal, noise, seed)
    } else {
        run_lif(spec, signal, noise)
    }
}

pub(crate) fn apply_scaled(
    spec: &DetectorSpec,
    signal: &[f64],
    noise: &[f64],
    scale: f64,
    seed: u64,
) -> Result<Vec<f64>> {
    if spec.is_memoryless() {
        spec.validate()?;
        Ok(memoryless_scaled(spec, signal, noise, scale, seed))
    } else {
        lif_scaled(spec, signal, noise, scale)
    }
}
