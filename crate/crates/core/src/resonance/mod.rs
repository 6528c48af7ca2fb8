//! Noise-intensity sweeps, optimum location, cross-model studies and the
//! adaptive noise controller.

mod controller;
mod optimum;
mod study;
mod sweep;

pub use controller::{
    adapt_step, run_controller, ControllerSettings, ControllerState, MIN_STEP, MIN_WINDOW, STEP_DECAY,
};
pub use optimum::{find_optimum, Optimum};
pub use study::{run_scatter_study, run_scatter_study_with, ScatterPair, ScatterStudy, MIN_STUDY_CONFIGS};
pub use sweep::{
    run_sweep, run_sweep_with, CurvePoint, ObjectiveSe, ResonanceCurve, SweepConfig, MIN_SAMPLES_PER_POINT,
};
