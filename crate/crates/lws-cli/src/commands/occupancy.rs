//! `lws occupancy build-db`: pool labelled occupancy runs into the
//! divergence-matching database used by `estimate occupancy`.

use std::path::{Path, PathBuf};

use lws_core::TimeSeries;
use lws_estimators::build_occupancy_db;
use lws_sim::{read_series_csv, GroundTruth};

use crate::artifacts::{load_metadata, sidecar_path, write_json};
use crate::error::CliError;

/// Default histogram resolution for a new database.
pub const DEFAULT_BIN_COUNT: usize = 16;

/// What `build-db` produced.
#[derive(Debug)]
pub struct BuildDbOutcome {
    pub out_path: PathBuf,
    pub summary: String,
}

/// Reads labelled occupancy runs (each CSV must have a simulator sidecar
/// carrying its occupant count) and writes the pooled database.
pub fn build_db(runs: &[PathBuf], bins: usize, out: &Path) -> Result<BuildDbOutcome, CliError> {
    if runs.is_empty() {
        return Err(CliError::invalid("build-db needs at least one run CSV"));
    }
    if bins < 2 {
        return Err(CliError::invalid(format!(
            "--bins must be at least 2, got {bins}"
        )));
    }

    let mut labelled: Vec<(u32, TimeSeries)> = Vec::with_capacity(runs.len());
    for path in runs {
        let series = read_series_csv(path)?;
        let meta = load_metadata(path)?.ok_or_else(|| {
            CliError::invalid(format!(
                "{}: no ground-truth sidecar ({}); build-db only accepts simulated runs",
                path.display(),
                sidecar_path(path).display()
            ))
        })?;
        let count = match meta.truth {
            GroundTruth::Occupancy { occupant_count, .. } => occupant_count,
            _ => {
                return Err(CliError::invalid(format!(
                    "{}: sidecar describes a {} run, not occupancy",
                    path.display(),
                    meta.scenario
                )))
            }
        };
        labelled.push((count, series));
    }

    let refs: Vec<(u32, &TimeSeries)> = labelled.iter().map(|(n, s)| (*n, s)).collect();
    let db = build_occupancy_db(&refs, bins)?;
    write_json(out, &db)?;

    let summary = format!(
        "occupancy build-db: wrote {} ({} occupant counts, {} bins, {} runs)",
        out.display(),
        db.entries().len(),
        bins,
        runs.len()
    );
    Ok(BuildDbOutcome {
        out_path: out.to_path_buf(),
        summary,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
