//! Closed-form model of the bipolar sensor: bipolar input with symmetric
//! thresholds at +-theta (theta > 1) and additive N(0, sigma^2) noise, with a
//! fair coin deciding sub-threshold outputs.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `W(x) = erf(x / sqrt 2) / 2`, the integral of the unit Gaussian over [0, x].
pub fn w_func(x: f64) -> f64 {
    0.5 * libm::erf(x / std::f64::consts::SQRT_2)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 1.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfModel { theta })
    }
}

/// Success probability `Q = P(y = s)` at noise level `sigma`.
///
/// `Q = 1/2 + [W((theta+1)/sigma) - W((theta-1)/sigma)] / 2`; sigma = 0 returns
/// the limit 1/2.
pub fn analytic_q(theta: f64, sigma: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(sigma >= 0.0) {
        return Err(invalid(format!("noise sigma must be non-negative, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(0.5);
    }
    Ok(0.5 + 0.5 * (w_func((theta + 1.0) / sigma) - w_func((theta - 1.0) / sigma)))
}

/// Noise level maximizing [`analytic_q`]:
/// `sqrt(2 theta / ln((theta+1)/(theta-1)))`.
pub fn analytic_sigma_opt(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok((2.0 * theta / ((theta + 1.0) / (theta - 1.0)).ln()).sqrt())
}

/// `1 + Q log2 Q + (1-Q) log2 (1-Q)`, with `0 log 0 = 0`.
pub fn analytic_mi(q_success: f64) -> f64 {
    let xlog2x = |p: f64| if p <= 0.0 { 0.0 } else { p * p.log2() };
    let q = q_success.clamp(0.0, 1.0);
    (1.0 + xlog2x(q) + xlog2x(1.0 - q)).clamp(0.0, 1.0)
}

pub fn analytic_cc(q_success: f64) -> f64 {
    2.0 * q_success - 1.0
}

/// Lag-1 output autocorrelation `c_ss (1 - 4 Q (1-Q))`; keeps the sign of the
/// input correlation.
pub fn analytic_ac(q_success: f64, c_ss: f64) -> f64 {
    c_ss * (1.0 - 4.0 * q_success * (1.0 - q_success))
}

/// Lag-1 autocorrelation `2q - 1` of a bipolar chain with persistence `q`.
pub fn input_ac_bipolar(persist_prob: f64) -> f64 {
    2.0 * persist_prob - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticModel {
    pub theta: f64,
    pub persist_prob: f64,
}

/// All model predictions at one noise level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticPoint {
    pub sigma: f64,
    pub q: f64,
    pub mi: f64,
    pub cc: f64,
    pub ac: f64,
}

impl AnalyticModel {
    pub fn new(theta: f64, persist_prob: f64) -> Result<Self> {
        check_theta(theta)?;
        if !(0.0..=1.0).contains(&persist_prob) {
            return Err(invalid(format!("persist_prob must lie in [0, 1], got {persist_prob}")));
        }
        Ok(Self { theta, persist_prob })
    }

    pub fn c_ss(&self) -> f64 {
        input_ac_bipolar(self.persist_prob)
    }

    pub fn sigma_opt(&self) -> f64 {
        analytic_sigma_opt(self.theta).expect("theta validated at construction")
    }

    pub fn at(&self, sigma: f64) -> Result<AnalyticPoint> {
        let q = analytic_q(self.theta, sigma)?;
        Ok(AnalyticPoint {
            sigma,
            q,
            mi: analytic_mi(q),
            cc: analytic_cc(q),
            ac: analytic_ac(q, self.c_ss()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Composite Simpson integral of the unit Gaussian density over [0, x];
    /// independent of libm's erf.
    fn gauss_area(x: f64) -> f64 {
        let n = 20_000;
        let h = x / n as f64;
        let g = |t: f64| (-0.5 * t * t).exp() / (std::f64::consts::TAU).sqrt();
        let mut s = g(0.0) + g(x);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
        }
        s * h / 3.0
    }

    /// Q from the three noise events for s = +1: n > theta-1 gives success,
    /// the sub-threshold band succeeds half the time.
    fn q_oracle(theta: f64, sigma: f64) -> f64 {
        let above = 0.5 - gauss_area((theta - 1.0) / sigma);
        let band = gauss_area((theta - 1.0) / sigma) + gauss_area((theta + 1.0) / sigma);
        above + 0.5 * band
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_func(0.0), 0.0);
        assert!((w_func(50.0) - 0.5).abs() < 1e-15);
        assert!((w_func(2.1) - 0.48214).abs() < 1e-4);
        assert!((w_func(2.1) - gauss_area(2.1)).abs() < 1e-10);
        assert_eq!(w_func(-1.3), -w_func(1.3));
    }

    #[test]
    fn q_limits_and_reference_value() {
        assert_eq!(analytic_q(1.1, 0.0).unwrap(), 0.5);
        assert!((analytic_q(1.1, 1e-6).unwrap() - 0.5).abs() < 1e-12);
        assert!((analytic_q(1.1, 1e6).unwrap() - 0.5).abs() < 1e-6);
        let q = analytic_q(1.1, 1.0).unwrap();
        assert!((q - q_oracle(1.1, 1.0)).abs() < 1e-9);
        assert!((q - 0.7212).abs() < 1e-3, "{q}");
    }

    #[test]
    fn out_of_model_threshold() {
        assert!(matches!(analytic_q(1.0, 1.0), Err(Error::OutOfModel { .. })));
        assert!(matches!(analytic_sigma_opt(0.5), Err(Error::OutOfModel { .. })));
        assert!(AnalyticModel::new(0.9, 0.7).is_err());
        assert!(AnalyticModel::new(1.1, 1.7).is_err());
    }

    fn grid_argmax(theta: f64) -> f64 {
        // Dense grid search on the oracle, independent of the closed form.
        let (mut best, mut arg) = (f64::NEG_INFINITY, 0.0);
        for i in 1..=300_000 {
            let s = i as f64 * 1e-5;
            let q = q_oracle_fast(theta, s);
            if q > best {
                best = q;
                arg = s;
            }
        }
        arg
    }

    fn q_oracle_fast(theta: f64, sigma: f64) -> f64 {
        let phi = |x: f64| 0.5 * libm::erfc(-x / std::f64::consts::SQRT_2);
        // P(n > theta - 1) + 0.5 P(-theta-1 < n < theta-1)
        let up = 1.0 - phi((theta - 1.0) / sigma);
        let band = phi((theta - 1.0) / sigma) - phi((-theta - 1.0) / sigma);
        up + 0.5 * band
    }

    #[test]
    fn sigma_opt_matches_grid_search() {
        for (theta, expected) in [(1.1, 0.850), (2.0, 1.908)] {
            let closed = analytic_sigma_opt(theta).unwrap();
            assert!((closed - expected).abs() < 1e-3, "{theta}: {closed}");
            assert!((closed - grid_argmax(theta)).abs() < 1e-4);
        }
        assert!(((4.0 / 3f64.ln()).sqrt() - analytic_sigma_opt(2.0).unwrap()).abs() < 1e-12);
        for theta in [1.1, 1.5, 2.0] {
            let s = analytic_sigma_opt(theta).unwrap();
            let q = analytic_q(theta, s).unwrap();
            assert!(q >= analytic_q(theta, s + 0.01).unwrap());
            assert!(q >= analytic_q(theta, s - 0.01).unwrap());
        }
    }

    #[test]
    fn mi_cc_ac_examples() {
        assert_eq!(analytic_mi(0.5), 0.0);
        assert_eq!(analytic_mi(1.0), 1.0);
        assert_eq!(analytic_mi(0.0), 1.0);
        let q: f64 = 0.942;
        let direct = 1.0 + q * q.log2() + (1.0 - q) * (1.0 - q).log2();
        assert!((analytic_mi(q) - direct).abs() < 1e-15);
        assert!((analytic_mi(q) - 0.680).abs() < 1e-3);

        assert_eq!(analytic_cc(0.5), 0.0);
        assert_eq!(analytic_cc(1.0), 1.0);
        assert_eq!(analytic_cc(0.0), -1.0);

        assert_eq!(analytic_ac(0.5, 0.9), 0.0);
        assert!((analytic_ac(1.0, 0.4) - 0.4).abs() < 1e-15);
        assert!((analytic_ac(0.942, 0.4) - 0.313).abs() < 1e-3);

        assert!((input_ac_bipolar(0.7) - 0.4).abs() < 1e-15);
        assert_eq!(input_ac_bipolar(0.5), 0.0);
        assert_eq!(input_ac_bipolar(1.0), 1.0);
    }

    #[test]
    fn same_argmax_on_dense_grid() {
        for theta in [1.1, 1.5, 2.0, 3.0] {
            let m = AnalyticModel::new(theta, 0.7).unwrap();
            let pts: Vec<AnalyticPoint> = (1..=6000).map(|i| m.at(i as f64 * 1e-3).unwrap()).collect();
            let argmax = |f: &dyn Fn(&AnalyticPoint) -> f64| {
                pts.iter()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |(bi, bv), (i, p)| {
                            if f(p) > bv {
                                (i, f(p))
                            } else {
                                (bi, bv)
                            }
                        },
                    )
                    .0
            };
            let a = argmax(&|p| p.q);
            assert_eq!(a, argmax(&|p| p.mi));
            assert_eq!(a, argmax(&|p| p.ac.abs()));
            assert_eq!(a, argmax(&|p| p.cc));
        }
    }

    proptest! {
        #[test]
        fn q_is_bounded(theta in 1.0001f64..10.0, sigma in 0.0f64..100.0) {
            let q = analytic_q(theta, sigma).unwrap();
            prop_assert!((0.5..1.0).contains(&q));
        }

        #[test]
        fn symmetries(q in 0.0f64..=1.0, c in -1.0f64..=1.0) {
            prop_assert!((analytic_mi(q) - analytic_mi(1.0 - q)).abs() < 1e-12);
            prop_assert!((analytic_ac(q, c).abs() - analytic_ac(1.0 - q, c).abs()).abs() < 1e-12);
            let f = 1.0 - 4.0 * q * (1.0 - q);
            prop_assert!((-1e-15..=1.0 + 1e-15).contains(&f));
            prop_assert!(analytic_ac(q, c).abs() <= c.abs() + 1e-15);
        }

        #[test]
        fn monotone_in_q_above_half(a in 0.5f64..1.0, b in 0.5f64..1.0) {
            prop_assume!(b - a > 1e-9);
            prop_assert!(analytic_mi(a) < analytic_mi(b));
            prop_assert!(analytic_cc(a) < analytic_cc(b));
            prop_assert!(analytic_ac(a, 0.4).abs() < analytic_ac(b, 0.4).abs());
        }
    }
}
