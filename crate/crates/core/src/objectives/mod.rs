//! Objective functions measured on a (signal, detector output) pair.

mod correlation;
mod information;
mod spectral;

use serde::{Deserialize, Serialize};

pub use correlation::{ac_rms, autocorrelation, cross_correlation, pearson_r, Autocorrelation};
pub use information::{mutual_information, mutual_information_slices, success_probability, BinningSpec};
pub use spectral::{snr_db, snr_from_spectra, welch_psd, Psd, DEFAULT_SEGMENT};

pub(crate) use correlation::{ac_rms_slice, autocorrelation_slice};
pub(crate) use spectral::snr_db_slices;

use crate::error::{Error, Result};

/// Which objectives a sweep computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ObjectiveSet {
    pub mi: bool,
    pub cc: bool,
    pub ac: bool,
    pub q: bool,
    pub snr: bool,
}

impl Default for ObjectiveSet {
    fn default() -> Self {
        Self::all()
    }
}

impl ObjectiveSet {
    pub const fn all() -> Self {
        Self {
            mi: true,
            cc: true,
            ac: true,
            q: true,
            snr: true,
        }
    }
}

/// Objective values at one noise intensity.
///
/// `q_hat` is present only for bipolar signal/output pairs and `snr_db` only
/// for periodic stimuli. A constant detector output makes the correlation
/// estimates 0/0; they are then reported as 0 with `degenerate` set.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectiveSample {
    pub mi_bits: f64,
    pub cc: f64,
    pub ac_lag1: f64,
    pub ac_rms: f64,
    pub q_hat: Option<f64>,
    pub snr_db: Option<f64>,
    pub degenerate: bool,
}

/// Names of objectives a resonance curve can be optimized over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Mi,
    Cc,
    /// Lag-1 output autocorrelation, compared by magnitude.
    Ac,
    AcRms,
    Q,
    Snr,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Self::Mi => "mi",
            Self::Cc => "cc",
            Self::Ac => "ac",
            Self::AcRms => "ac_rms",
            Self::Q => "q",
            Self::Snr => "snr",
        }
    }
}

/// Inputs for a single evaluation.
pub struct Measurement<'a> {
    pub signal: &'a [f64],
    pub output: &'a [f64],
    /// Detector response to noise alone, for SNR.
    pub noise_only: Option<&'a [f64]>,
    pub dt: f64,
    pub stimulus_freq: Option<f64>,
    pub signal_is_bipolar: bool,
}

pub fn evaluate(
    m: &Measurement<'_>,
    set: &ObjectiveSet,
    binning: &BinningSpec,
    ac_lags: &[usize],
) -> Result<ObjectiveSample> {
    let mut out = ObjectiveSample::default();
    if set.mi {
        out.mi_bits = mutual_information_slices(m.signal, m.output, binning)?;
    }
    if set.ac {
        let ac = autocorrelation_slice(m.output, 1)?;
        out.ac_lag1 = ac.value;
        out.degenerate = ac.degenerate;
        out.ac_rms = if ac.degenerate {
            0.0
        } else {
            ac_rms_slice(m.output, ac_lags)?
        };
    }
    if set.cc {
        out.cc = match pearson_r(m.signal, m.output) {
            Ok(r) => r,
            Err(Error::Degenerate(_)) => {
                out.degenerate = true;
                0.0
            }
            Err(e) => return Err(e),
        };
    }
    if set.q && m.signal_is_bipolar && m.output.iter().all(|&v| v == 1.0 || v == -1.0) {
        let hits = m.signal.iter().zip(m.output).filter(|(a, b)| a == b).count();
        out.q_hat = Some(hits as f64 / m.signal.len() as f64);
    }
    if set.snr {
        if let (Some(freq), Some(noise)) = (m.stimulus_freq, m.noise_only) {
            out.snr_db = Some(snr_db_slices(m.output, noise, m.dt, freq)?);
        }
    }
    Ok(out)
}
