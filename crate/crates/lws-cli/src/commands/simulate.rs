//! `lws simulate {vehicle|breathing|occupancy}`: run a scenario config and
//! persist the voltage series plus its ground-truth sidecar.

use std::path::{Path, PathBuf};

use lws_sim::{write_series_csv, ScenarioConfig};

use crate::artifacts::{sidecar_path, write_json, RunMetadata};
use crate::error::CliError;

/// Which family of scenario a `simulate` subcommand accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Vehicle,
    Breathing,
    Occupancy,
}

impl ScenarioKind {
    fn accepts(self, kind: &str) -> bool {
        match self {
            ScenarioKind::Vehicle => kind == "straight_pass" || kind == "curved_pass",
            ScenarioKind::Breathing => kind == "breathing",
            ScenarioKind::Occupancy => kind == "occupancy",
        }
    }

    fn expected(self) -> &'static str {
        match self {
            ScenarioKind::Vehicle => "straight_pass or curved_pass",
            ScenarioKind::Breathing => "breathing",
            ScenarioKind::Occupancy => "occupancy",
        }
    }
}

/// What a simulation run produced.
#[derive(Debug)]
pub struct SimulateOutcome {
    pub csv_path: PathBuf,
    pub meta_path: PathBuf,
    pub summary: String,
}

/// Loads a scenario config, simulates it, and writes `<out>.csv` plus
/// `<out>.meta.json`.
pub fn run(
    kind: ScenarioKind,
    config_path: &Path,
    out_base: &str,
    seed_override: Option<u64>,
) -> Result<SimulateOutcome, CliError> {
    let text =
        std::fs::read_to_string(config_path).map_err(|e| CliError::io_at(config_path, e))?;
    let mut config: ScenarioConfig = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", config_path.display())))?;

    if !kind.accepts(config.kind()) {
        return Err(CliError::invalid(format!(
            "{}: kind {:?} does not fit this subcommand (expected {})",
            config_path.display(),
            config.kind(),
            kind.expected()
        )));
    }
    if let Some(seed) = seed_override {
        set_seed(&mut config, seed);
    }
    config.validate()?;

    let series = config.simulate()?;
    let csv_path = PathBuf::from(format!("{out_base}.csv"));
    let meta_path = sidecar_path(&csv_path);
    write_series_csv(&csv_path, &series)?;
    write_json(&meta_path, &RunMetadata::for_config(&config))?;

    let summary = format!(
        "simulate {}: wrote {} and {} ({} samples at {} Hz, seed {})",
        config.kind(),
        csv_path.display(),
        meta_path.display(),
        series.len(),
        series.sample_rate_hz(),
        config.seed()
    );
    Ok(SimulateOutcome {
        csv_path,
        meta_path,
        summary,
    })
}

fn set_seed(config: &mut ScenarioConfig, seed: u64) {
    match config {
        ScenarioConfig::StraightPass(c) => c.seed = seed,
        ScenarioConfig::CurvedPass(c) => c.seed = seed,
        ScenarioConfig::Breathing(c) => c.seed = seed,
        ScenarioConfig::Occupancy(c) => c.seed = seed,
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
