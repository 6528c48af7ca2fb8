//! Online noise tuning driven only by the detector output.
//!
//! Each step probes the lag-1 output autocorrelation at `sigma` and at
//! `sigma + step` on the same signal window with the same noise draw
//! (common random numbers), moves `sigma` one step toward the larger
//! magnitude, and shrinks the step geometrically.

use serde::{Deserialize, Serialize};

use crate::detectors::{apply_scaled, DetectorSpec};
use crate::error::{invalid, Result};
use crate::objectives::autocorrelation_slice;
use crate::rng::{derive_seed, role};
use crate::series::TimeSeries;
use crate::signals::{standard_normal, SignalSource};

pub const STEP_DECAY: f64 = 0.95;
pub const MIN_STEP: f64 = 1e-3;
pub const MIN_WINDOW: usize = 1000;
/// Weight of the newest probe in the smoothed AC estimate.
const SMOOTHING: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerState {
    pub sigma: f64,
    pub ac_estimate: f64,
    pub step: f64,
    pub iteration: usize,
    pub window: usize,
    pub degenerate_count: usize,
    /// |AC| at `sigma` and `sigma + step` from the latest probe.
    pub last_probe: Option<(f64, f64)>,
}

impl ControllerState {
    pub fn new(sigma: f64, step: f64, window: usize) -> Result<Self> {
        if !(sigma >= 0.0 && sigma.is_finite()) {
            return Err(invalid(format!("controller sigma must be non-negative, got {sigma}")));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(invalid(format!("controller step must be positive, got {step}")));
        }
        if window < MIN_WINDOW {
            return Err(invalid(format!(
                "controller window must be at least {MIN_WINDOW}, got {window}"
            )));
        }
        Ok(Self {
            sigma,
            ac_estimate: 0.0,
            step,
            iteration: 0,
            window,
            degenerate_count: 0,
            last_probe: None,
        })
    }
}

/// One hill-climbing update of the noise level.
pub fn adapt_step(
    state: &ControllerState,
    signal_window: &TimeSeries,
    detector: &DetectorSpec,
    seed: u64,
) -> Result<ControllerState> {
    let n = signal_window.len();
    if n < MIN_WINDOW {
        return Err(invalid(format!(
            "signal window must hold at least {MIN_WINDOW} samples, got {n}"
        )));
    }
    let z = standard_normal(n, derive_seed(seed, &[role::NOISE]));
    let coin_seed = derive_seed(seed, &[role::COIN]);
    let s = signal_window.samples();
    let probe = |sigma: f64| -> Result<(f64, bool)> {
        let y = apply_scaled(detector, s, &z, sigma, coin_seed)?;
        let ac = autocorrelation_slice(&y, 1)?;
        Ok((ac.value.abs(), ac.degenerate))
    };
    let (here, dead_here) = probe(state.sigma)?;
    let (up, dead_up) = probe(state.sigma + state.step)?;

    let mut next = *state;
    next.iteration += 1;
    next.window = n;
    if dead_here && dead_up {
        next.degenerate_count += 1;
        return Ok(next);
    }
    next.last_probe = Some((here, up));
    let measured = if up > here {
        next.sigma = state.sigma + state.step;
        up
    } else if up < here {
        next.sigma = (state.sigma - state.step).max(0.0);
        here
    } else {
        here
    };
    next.ac_estimate = if state.iteration == 0 {
        measured
    } else {
        (1.0 - SMOOTHING) * state.ac_estimate + SMOOTHING * measured
    };
    next.step = (state.step * STEP_DECAY).max(MIN_STEP.min(state.step));
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerSettings {
    pub initial_sigma: f64,
    pub initial_step: f64,
    pub window: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for ControllerSettings {
    fn default() -> Self {
        Self {
            initial_sigma: 0.1,
            initial_step: 0.1,
            window: 10_000,
            iterations: 200,
            seed: 0,
        }
    }
}

/// Run the controller on a stream of fresh signal windows; returns the state
/// after every iteration.
pub fn run_controller(
    settings: &ControllerSettings,
    signal: &SignalSource,
    detector: &DetectorSpec,
) -> Result<Vec<ControllerState>> {
    detector.validate()?;
    let mut state = ControllerState::new(settings.initial_sigma, settings.initial_step, settings.window)?;
    let mut trajectory = Vec::with_capacity(settings.iterations);
    for k in 0..settings.iterations as u64 {
        let window = signal.generate(settings.window, derive_seed(settings.seed, &[role::WINDOW, k]))?;
        state = adapt_step(&state, &window, detector, derive_seed(settings.seed, &[role::NOISE, k]))?;
        trajectory.push(state);
    }
    Ok(trajectory)
}
