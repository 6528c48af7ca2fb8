use crate::error::{invalid, Error, Result};
use crate::series::TimeSeries;

/// Lag-`lag` autocorrelation estimate.
///
/// `degenerate` is set for a constant series, where the normalized estimate
/// is 0/0; `value` is then 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Autocorrelation {
    pub value: f64,
    pub degenerate: bool,
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Pearson correlation coefficient of two equal-length sequences.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(invalid(format!(
            "pearson_r needs equal lengths, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(invalid("pearson_r needs at least 2 points"));
    }
    if is_constant(xs) || is_constant(ys) {
        return Err(Error::Degenerate("zero variance in pearson_r input".into()));
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("zero variance in pearson_r input".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Normalized lag-0 cross-correlation of stimulus and response.
pub fn cross_correlation(s: &TimeSeries, y: &TimeSeries) -> Result<f64> {
    pearson_r(s.samples(), y.samples())
}

/// Normalized autocorrelation: mean-subtracted lagged products averaged over
/// the overlapping pairs, divided by the variance over the full series.
pub fn autocorrelation(y: &TimeSeries, lag: usize) -> Result<Autocorrelation> {
    autocorrelation_slice(y.samples(), lag)
}

pub(crate) fn autocorrelation_slice(y: &[f64], lag: usize) -> Result<Autocorrelation> {
    if lag == 0 {
        return Err(invalid("autocorrelation lag must be positive"));
    }
    if y.len() <= lag {
        return Err(invalid(format!(
            "autocorrelation lag {lag} needs more than {lag} samples, got {}",
            y.len()
        )));
    }
    let m = mean(y);
    let var = y.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / y.len() as f64;
    if is_constant(y) || var == 0.0 {
        return Ok(Autocorrelation {
            value: 0.0,
            degenerate: true,
        });
    }
    let pairs = y.len() - lag;
    let cov = y[..pairs]
        .iter()
        .zip(&y[lag..])
        .map(|(a, b)| (a - m) * (b - m))
        .sum::<f64>()
        / pairs as f64;
    Ok(Autocorrelation {
        value: cov / var,
        degenerate: false,
    })
}

/// Root mean square of the autocorrelation over a set of lags.
pub fn ac_rms(y: &TimeSeries, lags: &[usize]) -> Result<f64> {
    ac_rms_slice(y.samples(), lags)
}

pub(crate) fn ac_rms_slice(y: &[f64], lags: &[usize]) -> Result<f64> {
    if lags.is_empty() {
        return Err(invalid("ac_rms needs at least one lag"));
    }
    let mut acc = 0.0;
    for &lag in lags {
        let c = autocorrelation_slice(y, lag)?.value;
        acc += c * c;
    }
    Ok((acc / lags.len() as f64).sqrt())
}
