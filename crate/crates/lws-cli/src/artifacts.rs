//! JSON artifacts the commands exchange: run metadata sidecars and
//! estimate reports.
//!
//! Every artifact carries a `schema_version` field, writes with stable
//! field order and a trailing newline, and tolerates unknown fields on
//! read, so re-running a command on the same inputs reproduces the same
//! bytes and artifacts stay forward compatible.

use std::path::{Path, PathBuf};

use lws_core::{ChannelParams, Photodetector};
use lws_sim::{GroundTruth, ScenarioConfig};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::CliError;

/// Version stamped into every JSON artifact this binary writes.
pub const SCHEMA_VERSION: &str = "1";

/// Serializable snapshot of the photodetector front end used for a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorRecord {
    pub area_m2: f64,
    pub responsivity_a_per_w: f64,
    pub dark_current_a: f64,
    pub transimpedance_gain_v_per_a: f64,
}

impl From<&Photodetector> for DetectorRecord {
    fn from(d: &Photodetector) -> Self {
        DetectorRecord {
            area_m2: d.area_m2(),
            responsivity_a_per_w: d.responsivity_a_per_w(),
            dark_current_a: d.dark_current_a(),
            transimpedance_gain_v_per_a: d.transimpedance_gain_v_per_a(),
        }
    }
}

/// Sidecar written next to every simulated series: what generated it and
/// which ground-truth values an estimate can be scored against.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMetadata {
    pub schema_version: String,
    /// Scenario discriminator, e.g. `straight_pass`.
    pub scenario: String,
    pub seed: u64,
    /// Channel the generator used, absent for scenarios that specify raw
    /// power levels instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelParams>,
    pub detector: DetectorRecord,
    pub truth: GroundTruth,
}

impl RunMetadata {
    /// Builds the sidecar for a scenario about to be simulated.
    pub fn for_config(config: &ScenarioConfig) -> Self {
        let channel = match config {
            ScenarioConfig::StraightPass(c) => Some(c.channel.clone()),
            ScenarioConfig::CurvedPass(c) => Some(c.channel.clone()),
            ScenarioConfig::Breathing(c) => Some(c.channel.clone()),
            ScenarioConfig::Occupancy(_) => None,
        };
        RunMetadata {
            schema_version: SCHEMA_VERSION.to_string(),
            scenario: config.kind().to_string(),
            seed: config.seed(),
            channel,
            detector: DetectorRecord::from(&Photodetector::unit_gain()),
            truth: config.ground_truth(),
        }
    }
}

/// The sidecar path for a series CSV: `run.csv` maps to `run.meta.json`.
pub fn sidecar_path(series_path: &Path) -> PathBuf {
    series_path.with_extension("meta.json")
}

/// Loads the metadata sidecar for a series, if one exists.
///
/// A missing sidecar is normal (the series did not come from the
/// simulator) and yields `None`; a present but unreadable or
/// version-incompatible sidecar is an error.
pub fn load_metadata(series_path: &Path) -> Result<Option<RunMetadata>, CliError> {
    let path = sidecar_path(series_path);
    let text = match std::fs::read_to_string(&path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(CliError::io_at(&path, err)),
    };
    let meta: RunMetadata = parse_json(&text, &path)?;
    if meta.schema_version != SCHEMA_VERSION {
        return Err(CliError::invalid(format!(
            "{}: schema_version {:?} is not supported (expected {SCHEMA_VERSION:?})",
            path.display(),
            meta.schema_version
        )));
    }
    Ok(Some(meta))
}

/// How an estimate compares to the ground truth recorded at simulation
/// time.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Score {
    /// The simulated true value, in the estimate's own unit.
    pub truth: f64,
    pub abs_err: f64,
    /// `abs_err / |truth|`, omitted when the truth is zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<f64>,
}

impl Score {
    pub fn new(truth: f64, estimate: f64) -> Self {
        let abs_err = (estimate - truth).abs();
        let rel_err = (truth != 0.0).then(|| abs_err / truth.abs());
        Score {
            truth,
            abs_err,
            rel_err,
        }
    }
}

/// Fit-quality numbers common to every estimate report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_rms: Option<f64>,
    pub samples_dropped: usize,
}

/// The JSON document an `estimate` subcommand emits: which estimator ran,
/// with which parameters, what it found, and (when ground truth is known)
/// how close it came.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport<P: Serialize, E: Serialize> {
    pub schema_version: &'static str,
    pub estimator: &'static str,
    pub params: P,
    pub estimate: E,
    pub diagnostics: Diagnostics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<Score>,
}

/// Renders an artifact as pretty-printed JSON with a trailing newline.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifact types serialize");
    text.push('\n');
    text
}

/// Writes an artifact as pretty-printed JSON.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    std::fs::write(path, render_json(value)).map_err(|e| CliError::io_at(path, e))
}

/// Reads and parses a JSON artifact.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io_at(path, e))?;
    parse_json(&text, path)
}

fn parse_json<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
