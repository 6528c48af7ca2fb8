use std::path::Path;

use hound::{SampleFormat, WavReader};

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Read a mono PCM WAV file (16/24-bit integer or 32-bit float) into a
/// series scaled to [-1, 1] with `dt = 1 / sample_rate`.
pub fn load_audio(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let path = path.as_ref();
    let format_err = |detail: String| Error::Format {
        path: path.to_path_buf(),
        detail,
    };
    let reader = WavReader::open(path).map_err(|e| match e {
        hound::Error::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => format_err(other.to_string()),
    })?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(format_err(format!(
            "channels = {} (only mono is accepted)",
            spec.channels
        )));
    }
    if spec.sample_rate == 0 {
        return Err(format_err("sample_rate = 0".into()));
    }
    let samples: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, bits @ (16 | 24)) => {
            let scale = f64::from(1u32 << (bits - 1));
            reader
                .into_samples::<i32>()
                .map(|s| s.map(|v| f64::from(v) / scale))
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| format_err(e.to_string()))?
        }
        (SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(|v| f64::from(v).clamp(-1.0, 1.0)))
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| format_err(e.to_string()))?,
        (fmt, bits) => {
            return Err(format_err(format!(
                "bits_per_sample = {bits} with {fmt:?} encoding (expected 16/24-bit int or 32-bit float)"
            )))
        }
    };
    if samples.is_empty() {
        return Err(format_err("no samples".into()));
    }
    let label = format!("audio:{}", path.display());
    TimeSeries::new(samples, 1.0 / f64::from(spec.sample_rate), label)
}
