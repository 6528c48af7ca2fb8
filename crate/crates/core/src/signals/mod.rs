//! Input signal generators and the additive Gaussian noise process.
//!
//! Seeded generators are pure functions of `(parameters, seed)`.

mod audio;
pub mod ode;

use std::path::PathBuf;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub use audio::load_audio;

use crate::error::{invalid, Error, Result};
use crate::rng::stream_rng;
use crate::series::TimeSeries;

/// Correlated bipolar chain: `P(s_t = s_{t-1}) = persist_prob`, first sample
/// uniform over {-1, +1}.
pub fn gen_bipolar(persist_prob: f64, n: usize, seed: u64) -> Result<TimeSeries> {
    check_probability("persist_prob", persist_prob)?;
    check_count(n)?;
    let mut rng = stream_rng(seed);
    let mut current = if rng.random::<bool>() { 1.0 } else { -1.0 };
    let mut samples = Vec::with_capacity(n);
    samples.push(current);
    for _ in 1..n {
        if rng.random::<f64>() >= persist_prob {
            current = -current;
        }
        samples.push(current);
    }
    TimeSeries::new(samples, 1.0, format!("bipolar(q={persist_prob})"))
}

pub fn gen_sine(freq: f64, amplitude: f64, dt: f64, n: usize) -> Result<TimeSeries> {
    if !(freq > 0.0 && freq.is_finite()) {
        return Err(invalid(format!("sine frequency must be positive, got {freq}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("dt must be positive, got {dt}")));
    }
    check_count(n)?;
    let w = std::f64::consts::TAU * freq * dt;
    let samples = (0..n).map(|t| amplitude * (w * t as f64).sin()).collect();
    TimeSeries::new(samples, dt, format!("sine({freq}Hz)"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoesslerParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub dt: f64,
    pub initial_state: [f64; 3],
    pub transient_steps: usize,
}

impl Default for RoesslerParams {
    fn default() -> Self {
        Self {
            a: 0.15,
            b: 0.2,
            c: 7.1,
            dt: 0.01,
            initial_state: [1.0, 1.0, 0.0],
            transient_steps: 10_000,
        }
    }
}

impl RoesslerParams {
    fn derivative(&self, s: &[f64; 3]) -> [f64; 3] {
        let [x, y, z] = *s;
        [-(y + z), x + self.a * y, self.b + (x - self.c) * z]
    }
}

/// x-component of the Roessler system, RK4 at fixed `dt`, after discarding
/// `transient_steps` steps.
pub fn gen_roessler(params: &RoesslerParams, n: usize) -> Result<TimeSeries> {
    if !(params.dt > 0.0 && params.dt.is_finite()) {
        return Err(invalid(format!("dt must be positive, got {}", params.dt)));
    }
    check_count(n)?;
    let f = |_t: f64, s: &[f64; 3]| params.derivative(s);
    let mut state = params.initial_state;
    let mut step = 0usize;
    let mut advance = |state: &mut [f64; 3]| -> Result<()> {
        *state = ode::rk4_step(&f, step as f64 * params.dt, state, params.dt);
        step += 1;
        if state.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NumericOverflow { step })
        }
    };
    for _ in 0..params.transient_steps {
        advance(&mut state)?;
    }
    let mut samples = Vec::with_capacity(n);
    samples.push(state[0]);
    for _ in 1..n {
        advance(&mut state)?;
        samples.push(state[0]);
    }
    TimeSeries::new(samples, params.dt, "roessler-x")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OuParams {
    /// Correlation time.
    pub tau: f64,
    /// Noise amplitude.
    pub eps: f64,
    pub dt: f64,
    pub initial_x: f64,
}

/// Ornstein–Uhlenbeck realization using the exact conditional-Gaussian
/// update, so the stationary variance `eps^2 tau / 2` holds for any `dt`.
pub fn gen_ou(params: &OuParams, n: usize, seed: u64) -> Result<TimeSeries> {
    let OuParams {
        tau,
        eps,
        dt,
        initial_x,
    } = *params;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(invalid(format!("OU tau must be positive, got {tau}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("dt must be positive, got {dt}")));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(invalid(format!("OU eps must be non-negative, got {eps}")));
    }
    check_count(n)?;
    let decay = (-dt / tau).exp();
    let spread = (eps * eps * tau / 2.0 * (1.0 - decay * decay)).sqrt();
    let mut rng = stream_rng(seed);
    let mut x = initial_x;
    let mut samples = Vec::with_capacity(n);
    samples.push(x);
    for _ in 1..n {
        let xi: f64 = rng.sample(StandardNormal);
        x = x * decay + spread * xi;
        samples.push(x);
    }
    TimeSeries::new(samples, dt, format!("ou(tau={tau})"))
}

/// i.i.d. N(0, sigma^2) samples.
pub fn gen_gaussian_noise(sigma: f64, n: usize, seed: u64) -> Result<TimeSeries> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(invalid(format!("noise sigma must be non-negative, got {sigma}")));
    }
    check_count(n)?;
    let samples = standard_normal(n, seed).into_iter().map(|z| sigma * z).collect();
    TimeSeries::new(samples, 1.0, format!("gauss(sigma={sigma})"))
}

pub(crate) fn standard_normal(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed);
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Rescale so that `max |sample| == target_amp`.
pub fn normalize_amplitude(ts: &TimeSeries, target_amp: f64) -> Result<TimeSeries> {
    if !(target_amp > 0.0 && target_amp.is_finite()) {
        return Err(invalid(format!("target amplitude must be positive, got {target_amp}")));
    }
    let peak = ts.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::Degenerate("cannot normalize an all-zero series".into()));
    }
    if peak == target_amp {
        return Ok(ts.clone());
    }
    let k = target_amp / peak;
    Ok(ts.with_samples(ts.samples().iter().map(|v| v * k).collect(), ts.label()))
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(invalid("sample count must be at least 1"))
    } else {
        Ok(())
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("{name} must lie in [0, 1], got {p}")))
    }
}

fn default_persist() -> f64 {
    0.7
}

fn one() -> f64 {
    1.0
}

/// Declarative description of an input signal, as used by sweeps and
/// config files.
///
/// `peak` rescales the generated series to the given maximum absolute value;
/// together with the detector threshold it sets the signal-to-threshold
/// distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalSource {
    Bipolar {
        #[serde(default = "default_persist")]
        persist_prob: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    Sine {
        freq: f64,
        #[serde(default = "one")]
        amplitude: f64,
        dt: f64,
    },
    Roessler {
        #[serde(default)]
        params: RoesslerOverrides,
        #[serde(default)]
        peak: Option<f64>,
    },
    Ou {
        tau: f64,
        eps: f64,
        dt: f64,
        #[serde(default)]
        initial_x: f64,
        #[serde(default)]
        peak: Option<f64>,
    },
    Audio {
        path: PathBuf,
        #[serde(default)]
        peak: Option<f64>,
    },
}

/// Optional overrides on [`RoesslerParams::default`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoesslerOverrides {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub dt: Option<f64>,
    pub initial_state: Option<[f64; 3]>,
    pub transient_steps: Option<usize>,
}

impl RoesslerOverrides {
    pub fn resolve(&self) -> RoesslerParams {
        let d = RoesslerParams::default();
        RoesslerParams {
            a: self.a.unwrap_or(d.a),
            b: self.b.unwrap_or(d.b),
            c: self.c.unwrap_or(d.c),
            dt: self.dt.unwrap_or(d.dt),
            initial_state: self.initial_state.unwrap_or(d.initial_state),
            transient_steps: self.transient_steps.unwrap_or(d.transient_steps),
        }
    }
}

impl SignalSource {
    pub fn bipolar(persist_prob: f64) -> Self {
        Self::Bipolar {
            persist_prob,
            amplitude: 1.0,
        }
    }

    /// Generate `n` samples. Deterministic sources ignore `seed`.
    pub fn generate(&self, n: usize, seed: u64) -> Result<TimeSeries> {
        match self {
            Self::Bipolar {
                persist_prob,
                amplitude,
            } => {
                let ts = gen_bipolar(*persist_prob, n, seed)?;
                if *amplitude == 1.0 {
                    Ok(ts)
                } else {
                    normalize_amplitude(&ts, *amplitude)
                }
            }
            Self::Sine { freq, amplitude, dt } => gen_sine(*freq, *amplitude, *dt, n),
            Self::Roessler { params, peak } => rescale(gen_roessler(&params.resolve(), n)?, *peak),
            Self::Ou {
                tau,
                eps,
                dt,
                initial_x,
                peak,
            } => {
                let p = OuParams {
                    tau: *tau,
                    eps: *eps,
                    dt: *dt,
                    initial_x: *initial_x,
                };
                rescale(gen_ou(&p, n, seed)?, *peak)
            }
            Self::Audio { path, peak } => {
                let ts = load_audio(path)?;
                if ts.len() < n {
                    return Err(invalid(format!(
                        "audio file {} has {} samples, {n} requested",
                        path.display(),
                        ts.len()
                    )));
                }
                rescale(ts.truncated(n), *peak)
            }
        }
    }

    /// Whether the source is a pure sinusoid (SNR is defined only then).
    pub fn stimulus_freq(&self) -> Option<f64> {
        match self {
            Self::Sine { freq, .. } => Some(*freq),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Bipolar { .. } => "bipolar",
            Self::Sine { .. } => "sine",
            Self::Roessler { .. } => "roessler",
            Self::Ou { .. } => "ou",
            Self::Audio { .. } => "audio",
        }
    }
}

fn rescale(ts: TimeSeries, peak: Option<f64>) -> Result<TimeSeries> {
    match peak {
        Some(p) => normalize_amplitude(&ts, p),
        None => Ok(ts),
    }
}
