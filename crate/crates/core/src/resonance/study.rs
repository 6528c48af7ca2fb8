use serde::{Deserialize, Serialize};

use super::optimum::find_optimum;
use super::sweep::{run_sweep_with, SweepConfig};
use crate::error::{invalid, Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::objectives::{pearson_r, Objective};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterPair {
    pub sigma_mi: f64,
    pub sigma_ac: f64,
    /// Either optimum sits on the grid boundary.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterStudy {
    pub pairs: Vec<ScatterPair>,
    /// Pearson correlation of the MI and AC optima; `None` when undefined.
    pub r: Option<f64>,
    pub warnings: Vec<String>,
}

pub const MIN_STUDY_CONFIGS: usize = 3;

/// Locate the MI-optimal and AC-optimal noise level of every config and
/// correlate them across configs.
pub fn run_scatter_study(configs: &[SweepConfig]) -> Result<ScatterStudy> {
    run_scatter_study_with(configs, Execution::default())
}

pub fn run_scatter_study_with(configs: &[SweepConfig], exec: Execution) -> Result<ScatterStudy> {
    if configs.len() < MIN_STUDY_CONFIGS {
        return Err(invalid(format!(
            "a scatter study needs at least {MIN_STUDY_CONFIGS} configs, got {}",
            configs.len()
        )));
    }
    let pairs: Vec<ScatterPair> = map_indexed(configs.len(), exec, |i| {
        let with_ctx = |e: Error| match e {
            Error::NoOptimum(m) => Error::NoOptimum(format!("config {i}: {m}")),
            other => other,
        };
        let curve = run_sweep_with(&configs[i], exec)?;
        let mi = find_optimum(&curve, Objective::Mi).map_err(with_ctx)?;
        let ac = find_optimum(&curve, Objective::Ac).map_err(with_ctx)?;
        Ok(ScatterPair {
            sigma_mi: mi.sigma,
            sigma_ac: ac.sigma,
            boundary: mi.boundary || ac.boundary,
        })
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut warnings = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if p.boundary {
            warnings.push(format!("config {i}: optimum on the sigma grid boundary"));
        }
    }
    let xs: Vec<f64> = pairs.iter().map(|p| p.sigma_mi).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.sigma_ac).collect();
    let r = match pearson_r(&xs, &ys) {
        Ok(r) => Some(r),
        Err(e @ Error::Degenerate(_)) => {
            warnings.push(format!("correlation undefined: {e}"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(ScatterStudy { pairs, r, warnings })
}
