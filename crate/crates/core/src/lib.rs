//! Adaptive stochastic resonance toolkit.
//!
//! Weak signals below a detector threshold become detectable once noise is
//! added, with transmission peaking at an intermediate noise level. This
//! crate generates input signals, passes them through noisy threshold
//! detectors, measures information-transfer objectives, evaluates the
//! closed-form bipolar model, sweeps noise intensity, and tunes the noise
//! online from the output autocorrelation alone.
//!
//! Parallel sweeps use rayon behind the default `parallel` feature; every
//! work item owns a seed derived from the master seed, so results do not
//! depend on scheduling.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod detectors;
mod error;
pub mod exec;
pub mod objectives;
pub mod resonance;
pub mod rng;
mod series;
pub mod signals;

pub use error::{Error, Result};
pub use exec::Execution;
pub use series::TimeSeries;
