//! Welch power spectral density and the spectral SNR of a periodic response.

use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{invalid, Result};
use crate::series::TimeSeries;

pub const DEFAULT_SEGMENT: usize = 4096;

/// Bins on each side of the peak bin counted as "the peak".
const PEAK_HALF_WIDTH: usize = 1;
/// Bins on each side used to estimate the local floor, beyond the peak.
const FLOOR_SPAN: usize = 6;

/// One-sided power spectral density on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Psd {
    /// Density per bin, starting at 0 Hz.
    pub density: Vec<f64>,
    /// Bin spacing in Hz.
    pub df: f64,
}

impl Psd {
    pub fn nyquist(&self) -> f64 {
        (self.density.len() - 1) as f64 * self.df
    }

    fn bin_of(&self, freq: f64) -> usize {
        ((freq / self.df).round() as usize).min(self.density.len() - 1)
    }
}

/// Averaged Hann-windowed periodogram with 50% overlap. Segments shorter
/// than `segment` are used when the series itself is shorter.
pub fn welch_psd(x: &[f64], dt: f64, segment: usize) -> Result<Psd> {
    if x.len() < 2 {
        return Err(invalid("welch_psd needs at least 2 samples"));
    }
    let seg = segment.min(x.len()).max(2);
    let hop = (seg / 2).max(1);
    let window: Vec<f64> = (0..seg)
        .map(|i| 0.5 - 0.5 * (std::f64::consts::TAU * i as f64 / seg as f64).cos())
        .collect();
    let wss: f64 = window.iter().map(|w| w * w).sum();
    let fs = 1.0 / dt;
    let fft = FftPlanner::new().plan_fft_forward(seg);
    let half = seg / 2 + 1;
    let mut acc = vec![0.0; half];
    let mut buf = vec![Complex::new(0.0, 0.0); seg];
    let mut count = 0usize;
    let mut start = 0;
    while start + seg <= x.len() {
        let chunk = &x[start..start + seg];
        let m = chunk.iter().sum::<f64>() / seg as f64;
        for ((b, &v), &w) in buf.iter_mut().zip(chunk).zip(&window) {
            *b = Complex::new((v - m) * w, 0.0);
        }
        fft.process(&mut buf);
        for (a, c) in acc.iter_mut().zip(&buf) {
            *a += c.norm_sqr();
        }
        count += 1;
        start += hop;
    }
    let scale = 1.0 / (fs * wss * count as f64);
    let density = acc
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let one_sided = if k == 0 || (seg % 2 == 0 && k == seg / 2) {
                1.0
            } else {
                2.0
            };
            p * scale * one_sided
        })
        .collect();
    Ok(Psd {
        density,
        df: fs / seg as f64,
    })
}

/// SNR in dB from a joint (signal + noise) spectrum and a noise-only
/// spectrum on the same grid.
///
/// S is the area of the joint spectrum over the peak bins above the local
/// floor (mean density of the neighbouring bins); N is the noise-only density
/// averaged over the same peak bins. Returns `+inf` when N is zero.
pub fn snr_from_spectra(joint: &Psd, noise_only: &Psd, stimulus_freq: f64) -> Result<f64> {
    if joint.density.len() != noise_only.density.len() || joint.df != noise_only.df {
        return Err(invalid("joint and noise-only spectra must share a frequency grid"));
    }
    if !(stimulus_freq > 0.0) || stimulus_freq > joint.nyquist() {
        return Err(invalid(format!(
            "stimulus frequency {stimulus_freq} Hz is outside (0, {}] Hz",
            joint.nyquist()
        )));
    }
    let len = joint.density.len();
    let k0 = joint.bin_of(stimulus_freq);
    let lo = k0.saturating_sub(PEAK_HALF_WIDTH);
    let hi = (k0 + PEAK_HALF_WIDTH).min(len - 1);
    let floor_bins: Vec<usize> = (lo.saturating_sub(FLOOR_SPAN)..lo)
        .chain(hi + 1..(hi + 1 + FLOOR_SPAN).min(len))
        .filter(|&k| k > 0)
        .collect();
    let floor = if floor_bins.is_empty() {
        0.0
    } else {
        floor_bins.iter().map(|&k| joint.density[k]).sum::<f64>() / floor_bins.len() as f64
    };
    let signal: f64 = (lo..=hi)
        .map(|k| (joint.density[k] - floor) * joint.df)
        .sum::<f64>()
        .max(0.0);
    let noise = (lo..=hi).map(|k| noise_only.density[k]).sum::<f64>() / (hi - lo + 1) as f64;
    if noise <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / noise).log10())
}

/// SNR of a periodic-stimulus response `y` against the response to noise
/// alone, both estimated with [`welch_psd`] at [`DEFAULT_SEGMENT`].
pub fn snr_db(y: &TimeSeries, noise_only: &TimeSeries, stimulus_freq: f64) -> Result<f64> {
    if y.len() != noise_only.len() || y.dt() != noise_only.dt() {
        return Err(invalid("snr_db needs series of equal length and sample interval"));
    }
    snr_db_slices(y.samples(), noise_only.samples(), y.dt(), stimulus_freq)
}

pub(crate) fn snr_db_slices(y: &[f64], noise_only: &[f64], dt: f64, stimulus_freq: f64) -> Result<f64> {
    let nyquist = 0.5 / dt;
    if stimulus_freq > nyquist {
        return Err(invalid(format!(
            "stimulus frequency {stimulus_freq} Hz exceeds the Nyquist frequency {nyquist} Hz"
        )));
    }
    let joint = welch_psd(y, dt, DEFAULT_SEGMENT)?;
    let noise = welch_psd(noise_only, dt, DEFAULT_SEGMENT)?;
    snr_from_spectra(&joint, &noise, stimulus_freq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::{apply_memoryless, DetectorSpec};
    use crate::signals::{gen_gaussian_noise, gen_sine};

    fn flat(len: usize, df: f64) -> Psd {
        Psd {
            density: vec![1.0; len],
            df,
        }
    }

    fn with_peak(area: f64, k0: usize) -> Psd {
        let mut p = flat(257, 0.5);
        let extra = area / (3.0 * p.df);
        for k in k0 - 1..=k0 + 1 {
            p.density[k] += extra;
        }
        p
    }

    #[test]
    fn constructed_spectra_give_expected_db() {
        let noise = flat(257, 0.5);
        let freq = 20.0;
        let k0 = 40;
        let zero = snr_from_spectra(&with_peak(1.0, k0), &noise, freq).unwrap();
        assert!(zero.abs() < 1e-9, "{zero}");
        let ten = snr_from_spectra(&with_peak(10.0, k0), &noise, freq).unwrap();
        assert!((ten - 10.0).abs() < 1e-9, "{ten}");
    }

    #[test]
    fn zero_noise_density_is_infinite() {
        let joint = with_peak(1.0, 40);
        let silent = Psd {
            density: vec![0.0; 257],
            df: 0.5,
        };
        assert_eq!(snr_from_spectra(&joint, &silent, 20.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn above_nyquist_is_rejected() {
        let x = vec![0.0; 1000];
        assert!(snr_db_slices(&x, &x, 0.01, 60.0).is_err());
    }

    #[test]
    fn parseval_white_noise_density() {
        // Integral of the one-sided density equals the variance.
        let z = gen_gaussian_noise(2.0, 200_000, 3).unwrap();
        let p = welch_psd(z.samples(), 0.001, 4096).unwrap();
        let total: f64 = p.density.iter().sum::<f64>() * p.df;
        assert!((total - 4.0).abs() < 0.1, "{total}");
    }

    #[test]
    fn supra_threshold_sine_snr_decreases_with_noise() {
        let n = 1 << 16;
        let dt = 1.0 / 1024.0;
        let freq = 32.0;
        let s = gen_sine(freq, 2.0, dt, n).unwrap();
        let zero = TimeSeries::new(vec![0.0; n], dt, "zero").unwrap();
        let det = DetectorSpec::ContinuousSymmetric { theta: 1.0 };
        let mut last = f64::INFINITY;
        for (i, sigma) in [0.5, 0.8, 1.2, 2.0].into_iter().enumerate() {
            let z = gen_gaussian_noise(sigma, n, 40 + i as u64).unwrap();
            let z = TimeSeries::new(z.into_samples(), dt, "z").unwrap();
            let y = apply_memoryless(&det, &s, &z, 1).unwrap();
            let y0 = apply_memoryless(&det, &zero, &z, 1).unwrap();
            let snr = snr_db(&y, &y0, freq).unwrap();
            assert!(snr.is_finite() && snr > 0.0, "sigma={sigma}: {snr}");
            assert!(snr < last, "sigma={sigma}: {snr} !< {last}");
            last = snr;
        }
    }
}
