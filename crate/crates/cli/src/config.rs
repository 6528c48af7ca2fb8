//! TOML experiment configuration.
//!
//! Top-level tables: `signal`, `detector`, `sweep`, `controller`, `output`,
//! plus the `study` array used by `scatter`. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use srlab_core::detectors::DetectorSpec;
use srlab_core::objectives::{BinningSpec, ObjectiveSet};
use srlab_core::resonance::{ControllerSettings, SweepConfig};
use srlab_core::rng::derive_seed;
use srlab_core::signals::SignalSource;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfigFile {
    pub signal: Option<SignalSource>,
    pub detector: Option<DetectorSpec>,
    #[serde(default)]
    pub sweep: SweepSection,
    pub controller: Option<ControllerSettings>,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub study: Vec<StudyEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SigmaGrid {
    List(Vec<f64>),
    Range(GridRange),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SigmaGrid {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Self::List(v) => v.clone(),
            Self::Range(r) if r.points == 1 => vec![r.start],
            Self::Range(r) => (0..r.points)
                .map(|i| r.start + (r.stop - r.start) * i as f64 / (r.points - 1) as f64)
                .collect(),
        }
    }
}

impl Default for SigmaGrid {
    fn default() -> Self {
        Self::Range(GridRange {
            start: 0.05,
            stop: 3.0,
            points: 40,
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    pub sigma_grid: SigmaGrid,
    pub samples_per_point: usize,
    pub replicates: usize,
    pub seed: u64,
    pub objectives: Vec<String>,
    pub bins: usize,
    pub ac_lags: Vec<usize>,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            sigma_grid: SigmaGrid::default(),
            samples_per_point: 100_000,
            replicates: 5,
            seed: 0,
            objectives: vec!["mi".into(), "ac".into(), "cc".into(), "q".into(), "snr".into()],
            bins: 32,
            ac_lags: vec![1],
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyEntry {
    pub id: String,
    pub signal: SignalSource,
    pub detector: DetectorSpec,
}

/// Parsed config plus its source text, for line-numbered diagnostics.
pub struct LoadedConfig {
    pub file: ExperimentConfigFile,
    text: String,
    path: PathBuf,
}

/// 1-based line of the first `[key]`, `[[key]]` or `key =` in `text`.
fn line_of(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            let t = l.trim_start();
            t.starts_with(&format!("[{key}]"))
                || t.starts_with(&format!("[[{key}]]"))
                || t.strip_prefix(key).is_some_and(|r| r.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

pub fn load(path: &Path) -> Result<LoadedConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let file: ExperimentConfigFile =
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok(LoadedConfig {
        file,
        text,
        path: path.to_path_buf(),
    })
}

impl LoadedConfig {
    /// Configuration error pointing at the line where `key` is defined.
    pub fn error_at(&self, key: &str, msg: impl std::fmt::Display) -> CliError {
        match line_of(&self.text, key) {
            Some(line) => CliError::Config(format!("{}:{line}: [{key}] {msg}", self.path.display())),
            None => CliError::Config(format!("{}: [{key}] {msg}", self.path.display())),
        }
    }

    pub fn output_path(&self, cli_out: Option<&Path>) -> Result<PathBuf, CliError> {
        cli_out
            .map(Path::to_path_buf)
            .or_else(|| self.file.output.path.clone())
            .ok_or_else(|| CliError::Config("no output path: pass --out or set [output] path".into()))
    }

    pub fn signal(&self) -> Result<SignalSource, CliError> {
        self.file
            .signal
            .clone()
            .ok_or_else(|| CliError::Config(format!("{}: missing [signal] table", self.path.display())))
    }

    pub fn detector(&self) -> Result<DetectorSpec, CliError> {
        let d = self
            .file
            .detector
            .ok_or_else(|| CliError::Config(format!("{}: missing [detector] table", self.path.display())))?;
        d.validate().map_err(|e| self.error_at("detector", e))?;
        Ok(d)
    }

    fn objective_set(&self) -> Result<ObjectiveSet, CliError> {
        let mut set = ObjectiveSet {
            mi: false,
            cc: false,
            ac: false,
            q: false,
            snr: false,
        };
        for name in &self.file.sweep.objectives {
            match name.as_str() {
                "mi" => set.mi = true,
                "cc" => set.cc = true,
                "ac" => set.ac = true,
                "q" => set.q = true,
                "snr" => set.snr = true,
                other => return Err(self.error_at("objectives", format!("unknown objective `{other}`"))),
            }
        }
        Ok(set)
    }

    /// Sweep configuration for `signal` and `detector` under the shared
    /// `[sweep]` settings.
    pub fn sweep_config(
        &self,
        signal: SignalSource,
        detector: DetectorSpec,
        seed: u64,
    ) -> Result<SweepConfig, CliError> {
        let s = &self.file.sweep;
        let cfg = SweepConfig {
            signal,
            detector,
            sigma_grid: s.sigma_grid.values(),
            samples_per_point: s.samples_per_point,
            replicates: s.replicates,
            master_seed: seed,
            objectives: self.objective_set()?,
            binning: BinningSpec {
                bins: s.bins,
                range: None,
            },
            ac_lags: s.ac_lags.clone(),
        };
        cfg.validate().map_err(|e| {
            let key = if e.to_string().contains("sigma_grid") {
                "sigma_grid"
            } else {
                "sweep"
            };
            self.error_at(key, e)
        })?;
        Ok(cfg)
    }

    /// One sweep per `[[study]]` entry; entry `i` uses a seed derived from
    /// the master seed and `i`.
    pub fn study_configs(&self, master_seed: u64) -> Result<Vec<(String, SweepConfig)>, CliError> {
        self.file
            .study
            .iter()
            .enumerate()
            .map(|(i, e)| {
                e.detector
                    .validate()
                    .map_err(|err| self.error_at("study", format!("{}: {err}", e.id)))?;
                let cfg = self.sweep_config(e.signal.clone(), e.detector, derive_seed(master_seed, &[i as u64]))?;
                Ok((e.id.clone(), cfg))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_range_expands_inclusively() {
        let g = SigmaGrid::Range(GridRange {
            start: 0.0,
            stop: 1.0,
            points: 5,
        });
        assert_eq!(g.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn finds_lines() {
        let text = "[signal]\nkind = \"bipolar\"\n\n[sweep]\nsigma_grid = []\n";
        assert_eq!(line_of(text, "sweep"), Some(4));
        assert_eq!(line_of(text, "sigma_grid"), Some(5));
        assert_eq!(line_of(text, "detector"), None);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<ExperimentConfigFile>("[sweep]\nsigmma = 1\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("sigmma") && msg.contains("line 2"), "{msg}");
        let err = toml::from_str::<ExperimentConfigFile>(
            "[detector]\nkind = \"discrete_symmetric\"\ntheta = 1.1\ntau_m = 2\n",
        )
        .unwrap_err();
        assert!(err.to_string().contains("tau_m"), "{err}");
    }

    #[test]
    fn full_document_parses() {
        let text = r#"
[signal]
kind = "bipolar"
persist_prob = 0.7

[detector]
kind = "lif"
theta = 1.0
tau_m = 0.5
dt = 1.0

[sweep]
sigma_grid = { start = 0.1, stop = 1.0, points = 10 }
samples_per_point = 2000
objectives = ["mi", "ac"]

[controller]
iterations = 5

[output]
path = "x.csv"

[[study]]
id = "a"
signal = { kind = "sine", freq = 5.0, dt = 0.001 }
detector = { kind = "continuous_asymmetric", theta = 1.5 }
"#;
        let f: ExperimentConfigFile = toml::from_str(text).unwrap();
        assert_eq!(f.sweep.sigma_grid.values().len(), 10);
        assert_eq!(f.controller.unwrap().iterations, 5);
        assert_eq!(f.controller.unwrap().window, 10_000);
        assert_eq!(f.study.len(), 1);
        assert!(matches!(f.signal, Some(SignalSource::Bipolar { persist_prob, .. }) if persist_prob == 0.7));
    }
}
