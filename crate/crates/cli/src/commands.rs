use std::path::{Path, PathBuf};

use anyhow::Context as _;
use clap::Args;
use srlab_core::analytic::AnalyticModel;
use srlab_core::resonance::{run_controller, run_scatter_study, run_sweep, ControllerSettings, MIN_STUDY_CONFIGS};

use crate::config::{self, LoadedConfig};
use crate::csvfmt::{fmt_num, fmt_opt, CsvBuf};
use crate::error::CliError;

pub const SWEEP_HEADER: &str = "sigma,mi,ac,cc,q,snr,mi_se,ac_se";
pub const ANALYTIC_HEADER: &str = "sigma,q_analytic,mi_analytic,ac_analytic,cc_analytic";
pub const SCATTER_HEADER: &str = "config_id,sigma_mi,sigma_ac,boundary_flag";
pub const ADAPT_HEADER: &str = "iter,sigma,ac_estimate,step";

#[derive(Debug, Args)]
pub struct AnalyticArgs {
    /// Threshold in units of the signal amplitude; must exceed 1.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    /// Persistence probability of the bipolar input.
    #[arg(long, default_value_t = 0.7)]
    pub q: f64,
    #[arg(long, default_value_t = 0.0)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 100.0)]
    pub sigma_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    #[arg(long)]
    pub out: PathBuf,
}

fn write_csv(path: &Path, body: String) -> Result<(), CliError> {
    std::fs::write(path, body)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(CliError::Runtime)
}

pub fn sweep(config_path: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let out = cfg.output_path(out)?;
    let seed = seed.unwrap_or(cfg.file.sweep.seed);
    let sweep = cfg.sweep_config(cfg.signal()?, cfg.detector()?, seed)?;
    let curve = run_sweep(&sweep)?;

    let set = sweep.objectives;
    let mut csv = CsvBuf::with_header(SWEEP_HEADER);
    for p in &curve.points {
        let (m, se) = (&p.mean, &p.se);
        let pick = |on: bool, v: f64| if on { fmt_num(v) } else { String::new() };
        csv.row([
            fmt_num(p.sigma),
            pick(set.mi, m.mi_bits),
            pick(set.ac, m.ac_lag1),
            pick(set.cc, m.cc),
            fmt_opt(m.q_hat),
            fmt_opt(m.snr_db),
            pick(set.mi, se.mi_bits),
            pick(set.ac, se.ac_lag1),
        ]);
    }
    write_csv(&out, csv.into_string())
}

pub fn analytic(a: &AnalyticArgs) -> Result<(), CliError> {
    let model = AnalyticModel::new(a.theta, a.q).map_err(|e| CliError::Config(e.to_string()))?;
    if a.points == 0 {
        return Err(CliError::Config("--points must be at least 1".into()));
    }
    if !(a.sigma_min >= 0.0 && a.sigma_max >= a.sigma_min && a.sigma_max.is_finite()) {
        return Err(CliError::Config(format!(
            "invalid sigma range [{}, {}]",
            a.sigma_min, a.sigma_max
        )));
    }
    let mut csv = CsvBuf::with_header(ANALYTIC_HEADER);
    for i in 0..a.points {
        let sigma = if a.points == 1 {
            a.sigma_min
        } else {
            a.sigma_min + (a.sigma_max - a.sigma_min) * i as f64 / (a.points - 1) as f64
        };
        let p = model.at(sigma)?;
        csv.row([
            fmt_num(sigma),
            fmt_num(p.q),
            fmt_num(p.mi),
            fmt_num(p.ac),
            fmt_num(p.cc),
        ]);
    }
    write_csv(&a.out, csv.into_string())
}

pub fn scatter(config_path: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<(), CliError> {
    let cfg = config::load(config_path)?;
    let out = cfg.output_path(out)?;
    if cfg.file.study.len() < MIN_STUDY_CONFIGS {
        return Err(cfg.error_at(
            "study",
            format!(
                "a scatter study needs at least {MIN_STUDY_CONFIGS} entries, got {}",
                cfg.file.study.len()
            ),
        ));
    }
    let seed = seed.unwrap_or(cfg.file.sweep.seed);
    let (ids, configs): (Vec<_>, Vec<_>) = cfg.study_configs(seed)?.into_iter().unzip();
    let study = run_scatter_study(&configs)?;
    for w in &study.warnings {
        eprintln!("srlab: warning: {w}");
    }

    let mut csv = CsvBuf::with_header(SCATTER_HEADER);
    for (id, p) in ids.iter().zip(&study.pairs) {
        csv.row([
            id.clone(),
            fmt_num(p.sigma_mi),
            fmt_num(p.sigma_ac),
            u8::from(p.boundary).to_string(),
        ]);
    }
    csv.line(&format!("# pearson_r={}", fmt_num(study.r.unwrap_or(f64::NAN))));
    write_csv(&out, csv.into_string())
}

pub fn adapt(config_path: &Path, out: Option<&Path>, seed: Option<u64>) -> Result<(), CliError> {
    let cfg: LoadedConfig = config::load(config_path)?;
    let out = cfg.output_path(out)?;
    let mut settings: ControllerSettings = cfg.file.controller.unwrap_or_default();
    if let Some(s) = seed {
        settings.seed = s;
    }
    let signal = cfg.signal()?;
    let detector = cfg.detector()?;
    let trajectory = run_controller(&settings, &signal, &detector).map_err(|e| match e {
        srlab_core::Error::InvalidArgument(m) => cfg.error_at("controller", m),
        other => other.into(),
    })?;

    let mut csv = CsvBuf::with_header(ADAPT_HEADER);
    for s in &trajectory {
        csv.row([
            s.iteration.to_string(),
            fmt_num(s.sigma),
            fmt_num(s.ac_estimate),
            fmt_num(s.step),
        ]);
    }
    if let Some(last) = trajectory.last() {
        csv.line(&format!("# converged_sigma={}", fmt_num(last.sigma)));
    }
    write_csv(&out, csv.into_string())
}
