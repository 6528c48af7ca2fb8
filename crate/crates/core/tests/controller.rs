use srlab_core::detectors::DetectorSpec;
use srlab_core::resonance::{adapt_step, run_controller, ControllerSettings, ControllerState, MIN_STEP};
use srlab_core::signals::{gen_bipolar, SignalSource};
use srlab_core::Error;

const DET: DetectorSpec = DetectorSpec::DiscreteSymmetric { theta: 1.1 };

#[test]
fn moves_uphill() {
    // At sigma=0 the output is pure coin flips; at 0.85 it carries the
    // input's correlation.
    let w = gen_bipolar(0.7, 20_000, 1).unwrap();
    let s = ControllerState::new(0.0, 0.85, 20_000).unwrap();
    let next = adapt_step(&s, &w, &DET, 2).unwrap();
    let (here, up) = next.last_probe.unwrap();
    assert!(up > here);
    assert_eq!(next.sigma, 0.85);
    assert_eq!(next.iteration, 1);
    assert!((next.step - 0.85 * 0.95).abs() < 1e-12);
}

#[test]
fn moves_downhill_and_clamps_at_zero() {
    let w = gen_bipolar(0.7, 20_000, 1).unwrap();
    let s = ControllerState::new(0.85, 5.0, 20_000).unwrap();
    let next = adapt_step(&s, &w, &DET, 3).unwrap();
    let (here, up) = next.last_probe.unwrap();
    assert!(up < here);
    assert_eq!(next.sigma, 0.0);
}

#[test]
fn step_decays_to_floor() {
    let w = gen_bipolar(0.7, 2_000, 1).unwrap();
    let mut s = ControllerState::new(0.5, 2e-3, 2_000).unwrap();
    for k in 0..40 {
        s = adapt_step(&s, &w, &DET, k).unwrap();
        assert!(s.step >= MIN_STEP && s.sigma >= 0.0);
    }
    assert_eq!(s.step, MIN_STEP);
}

#[test]
fn degenerate_probes_leave_sigma_alone() {
    // Far above the signal and no noise: the output never leaves zero.
    let det = DetectorSpec::ContinuousAsymmetric { theta: 100.0 };
    let w = gen_bipolar(0.7, 5_000, 1).unwrap();
    let s = ControllerState::new(0.0, 1e-3, 5_000).unwrap();
    let next = adapt_step(&s, &w, &det, 4).unwrap();
    assert_eq!(next.sigma, s.sigma);
    assert_eq!(next.step, s.step);
    assert_eq!(next.degenerate_count, 1);
    assert_eq!(next.iteration, 1);
}

#[test]
fn rejects_short_windows_and_bad_state() {
    let w = gen_bipolar(0.7, 999, 1).unwrap();
    let s = ControllerState::new(0.1, 0.1, 1_000).unwrap();
    assert!(matches!(adapt_step(&s, &w, &DET, 0), Err(Error::InvalidArgument(_))));
    assert!(ControllerState::new(-0.1, 0.1, 1_000).is_err());
    assert!(ControllerState::new(0.1, 0.0, 1_000).is_err());
    assert!(ControllerState::new(0.1, 0.1, 10).is_err());
}

#[test]
fn controller_is_deterministic_and_heads_for_the_optimum() {
    let settings = ControllerSettings {
        iterations: 120,
        window: 10_000,
        seed: 5,
        ..Default::default()
    };
    let a = run_controller(&settings, &SignalSource::bipolar(0.7), &DET).unwrap();
    let b = run_controller(&settings, &SignalSource::bipolar(0.7), &DET).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 120);
    let last = a.last().unwrap().sigma;
    assert!((0.5..=1.3).contains(&last), "{last}");

    let none = ControllerSettings {
        iterations: 0,
        ..settings
    };
    assert!(run_controller(&none, &SignalSource::bipolar(0.7), &DET)
        .unwrap()
        .is_empty());
}
