use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::series::TimeSeries;

/// Histogram discretization for the plug-in MI estimator.
///
/// A variable with at most `bins` distinct values is treated as discrete and
/// binned by exact value; otherwise it is split into `bins` equal-width bins
/// over `range` (or its observed min/max).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinningSpec {
    pub bins: usize,
    #[serde(default)]
    pub range: Option<(f64, f64)>,
}

impl Default for BinningSpec {
    fn default() -> Self {
        Self { bins: 32, range: None }
    }
}

impl BinningSpec {
    pub fn validate(&self) -> Result<()> {
        if self.bins < 2 {
            return Err(invalid(format!("binning needs at least 2 bins, got {}", self.bins)));
        }
        if let Some((lo, hi)) = self.range {
            if !(lo < hi) {
                return Err(invalid(format!("binning range requires lo < hi, got ({lo}, {hi})")));
            }
        }
        Ok(())
    }
}

/// Category index per sample plus the number of categories.
fn discretize(values: &[f64], spec: &BinningSpec) -> (Vec<u32>, usize) {
    let mut distinct: Vec<u64> = Vec::with_capacity(spec.bins + 1);
    let key = |v: f64| if v == 0.0 { 0u64 } else { v.to_bits() };
    let mut is_discrete = true;
    for &v in values {
        let k = key(v);
        if !distinct.contains(&k) {
            if distinct.len() == spec.bins {
                is_discrete = false;
                break;
            }
            distinct.push(k);
        }
    }
    if is_discrete {
        let codes = values
            .iter()
            .map(|&v| {
                let k = key(v);
                distinct.iter().position(|&d| d == k).unwrap() as u32
            })
            .collect();
        return (codes, distinct.len());
    }
    let (lo, hi) = spec.range.unwrap_or_else(|| {
        values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
    });
    let width = (hi - lo) / spec.bins as f64;
    let last = spec.bins - 1;
    let codes = values
        .iter()
        .map(|&v| {
            let b = ((v - lo) / width).floor();
            if b <= 0.0 {
                0
            } else {
                (b as usize).min(last) as u32
            }
        })
        .collect();
    (codes, spec.bins)
}

/// Entropy in nats from occupancy counts; counts are sorted first so the
/// result does not depend on cell order.
fn entropy(mut counts: Vec<u64>, total: u64) -> f64 {
    counts.retain(|&c| c > 0);
    counts.sort_unstable();
    let n = total as f64;
    let s: f64 = counts.iter().map(|&c| c as f64 * (c as f64).ln()).sum();
    n.ln() - s / n
}

/// Plug-in histogram estimate of I(S;Y) in bits.
pub fn mutual_information(s: &TimeSeries, y: &TimeSeries, binning: &BinningSpec) -> Result<f64> {
    mutual_information_slices(s.samples(), y.samples(), binning)
}

pub fn mutual_information_slices(s: &[f64], y: &[f64], binning: &BinningSpec) -> Result<f64> {
    binning.validate()?;
    if s.len() != y.len() {
        return Err(invalid(format!(
            "mutual information needs equal lengths, got {} and {}",
            s.len(),
            y.len()
        )));
    }
    if s.len() < 2 {
        return Err(invalid("mutual information needs at least 2 samples"));
    }
    let (cs, ks) = discretize(s, binning);
    let (cy, ky) = discretize(y, binning);
    if ks < 2 || ky < 2 {
        return Ok(0.0);
    }
    let mut ms = vec![0u64; ks];
    let mut my = vec![0u64; ky];
    let mut joint = vec![0u64; ks * ky];
    for (&a, &b) in cs.iter().zip(&cy) {
        ms[a as usize] += 1;
        my[b as usize] += 1;
        joint[a as usize * ky + b as usize] += 1;
    }
    let total = s.len() as u64;
    let nats = entropy(ms, total) + entropy(my, total) - entropy(joint, total);
    Ok((nats / std::f64::consts::LN_2).max(0.0))
}

/// Fraction of indices where `y_t == s_t`; both series must be bipolar.
pub fn success_probability(s: &TimeSeries, y: &TimeSeries) -> Result<f64> {
    if s.len() != y.len() {
        return Err(invalid(format!(
            "success probability needs equal lengths, got {} and {}",
            s.len(),
            y.len()
        )));
    }
    if !s.is_bipolar() || !y.is_bipolar() {
        return Err(invalid("success probability requires bipolar {-1, +1} series"));
    }
    let hits = s.samples().iter().zip(y.samples()).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / s.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::gen_bipolar;
    use proptest::prelude::*;

    fn ts(v: Vec<f64>) -> TimeSeries {
        TimeSeries::new(v, 1.0, "t").unwrap()
    }

    /// Binary symmetric channel with exactly `round(q n)` successes.
    fn channel(s: &TimeSeries, q: f64) -> TimeSeries {
        let n = s.len();
        let hits = (q * n as f64).round() as usize;
        let stride = n as f64 / (n - hits) as f64;
        let mut flip = vec![false; n];
        for k in 0..(n - hits) {
            flip[(k as f64 * stride) as usize] = true;
        }
        ts(s.samples()
            .iter()
            .zip(flip)
            .map(|(&v, f)| if f { -v } else { v })
            .collect())
    }

    #[test]
    fn identity_channel_carries_one_bit() {
        let s = gen_bipolar(0.5, 100_000, 1).unwrap();
        let mi = mutual_information(&s, &s, &BinningSpec::default()).unwrap();
        assert!((mi - 1.0).abs() < 0.01, "{mi}");
    }

    #[test]
    fn independent_pair_carries_nothing() {
        let s = gen_bipolar(0.5, 100_000, 1).unwrap();
        let y = gen_bipolar(0.5, 100_000, 2).unwrap();
        let mi = mutual_information(&s, &y, &BinningSpec::default()).unwrap();
        assert!(mi < 0.01, "{mi}");
    }

    #[test]
    fn bipolar_channel_matches_binary_formula() {
        // Oracle: 1 + Q log2 Q + (1-Q) log2 (1-Q) at Q = 0.942.
        let q: f64 = 0.942;
        let oracle = 1.0 + q * q.log2() + (1.0 - q) * (1.0 - q).log2();
        assert!((oracle - 0.680).abs() < 0.001);
        let s = gen_bipolar(0.5, 200_000, 5).unwrap();
        let y = channel(&s, q);
        assert!((success_probability(&s, &y).unwrap() - q).abs() < 1e-9);
        let mi = mutual_information(&s, &y, &BinningSpec::default()).unwrap();
        assert!((mi - 0.680).abs() < 0.01, "{mi}");
    }

    #[test]
    fn single_bin_marginal_gives_zero() {
        let s = gen_bipolar(0.5, 1000, 1).unwrap();
        let c = ts(vec![0.25; 1000]);
        assert_eq!(mutual_information(&s, &c, &BinningSpec::default()).unwrap(), 0.0);
    }

    #[test]
    fn continuous_values_are_binned() {
        // y = s exactly, both uniform on 64 levels -> 32 equal-width bins
        // give log2(32) = 5 bits.
        let v: Vec<f64> = (0..64_000).map(|i| (i % 64) as f64 / 63.0).collect();
        let mi = mutual_information(&ts(v.clone()), &ts(v), &BinningSpec::default()).unwrap();
        assert!((mi - 5.0).abs() < 1e-9, "{mi}");
    }

    #[test]
    fn explicit_range_clamps_outliers() {
        let spec = BinningSpec {
            bins: 5,
            range: Some((0.0, 1.0)),
        };
        let s: Vec<f64> = vec![-5.0, 0.2, 0.7, 9.0, 0.1, 0.6];
        let (codes, k) = discretize(&s, &spec);
        assert_eq!(k, 5);
        assert_eq!(codes[0], 0);
        assert_eq!(codes[3], 4);
    }

    #[test]
    fn argument_errors() {
        let a = ts(vec![1.0, -1.0, 1.0]);
        let b = ts(vec![1.0, -1.0]);
        assert!(mutual_information(&a, &b, &BinningSpec::default()).is_err());
        assert!(mutual_information(&a, &a, &BinningSpec { bins: 1, range: None }).is_err());
        assert!(mutual_information(&ts(vec![1.0]), &ts(vec![1.0]), &BinningSpec::default()).is_err());
        assert!(success_probability(&a, &b).is_err());
        assert!(success_probability(&a, &ts(vec![1.0, 0.0, 1.0])).is_err());
    }

    #[test]
    fn success_probability_examples() {
        let s = gen_bipolar(0.7, 1000, 3).unwrap();
        let neg = ts(s.samples().iter().map(|v| -v).collect());
        assert_eq!(success_probability(&s, &s).unwrap(), 1.0);
        assert_eq!(success_probability(&s, &neg).unwrap(), 0.0);
        let y = gen_bipolar(0.7, 100_000, 4).unwrap();
        let s = gen_bipolar(0.7, 100_000, 5).unwrap();
        let q = success_probability(&s, &y).unwrap();
        assert!((q - 0.5).abs() < 0.005, "{q}");
    }

    proptest! {
        #[test]
        fn estimator_is_symmetric_and_nonnegative(
            pairs in proptest::collection::vec((-4.0f64..4.0, -4.0f64..4.0), 2..400),
            bins in 2usize..40,
        ) {
            let (s, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let spec = BinningSpec { bins, range: None };
            let a = mutual_information_slices(&s, &y, &spec).unwrap();
            let b = mutual_information_slices(&y, &s, &spec).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
            prop_assert!(a >= 0.0);
        }
    }
}
