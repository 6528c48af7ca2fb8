use serde::{Deserialize, Serialize};

use super::sweep::ResonanceCurve;
use crate::error::{Error, Result};
use crate::objectives::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub sigma: f64,
    pub value: f64,
    pub index: usize,
    /// The maximum sits on the first or last grid point, so the true
    /// optimum may lie outside the grid.
    pub boundary: bool,
}

/// Grid point maximizing `objective`; ties go to the smaller sigma.
pub fn find_optimum(curve: &ResonanceCurve, objective: Objective) -> Result<Optimum> {
    let len = curve.points.len();
    let mut best: Option<(usize, f64)> = None;
    for i in 0..len {
        if let Some(v) = curve.score(i, objective) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    let (index, value) = best.ok_or_else(|| {
        Error::NoOptimum(format!(
            "objective {} is absent or degenerate at every grid point",
            objective.name()
        ))
    })?;
    Ok(Optimum {
        sigma: curve.points[index].sigma,
        value,
        index,
        boundary: len > 1 && (index == 0 || index == len - 1),
    })
}
