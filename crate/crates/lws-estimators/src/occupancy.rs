//! Occupancy-count classification by distribution matching.
//!
//! Training runs with known occupant counts are pooled per count into
//! smoothed voltage histograms over one shared bin grid. A query series is
//! histogrammed onto the same grid and scored against every entry with
//! the KL divergence `KL(query || entry)`; the entry with the smallest
//! divergence wins. Ties break toward the smaller count, which is the
//! conservative call for a presence detector.
//!
//! The shared grid is the load-bearing detail: KL comparisons are only
//! meaningful when both distributions describe the same partition of the
//! voltage axis, so the grid is frozen at build time from the pooled range
//! of all training runs and serialized with the database.

use std::collections::BTreeMap;

use lws_core::TimeSeries;
use lws_dsp::{kl_divergence, EmpiricalDistribution};
use serde::{Deserialize, Serialize};

use crate::EstimatorError;

/// Additive smoothing applied to every histogram, train and query alike.
/// Keeps KL finite when the query has mass in a bin a reference never saw.
pub const DB_SMOOTHING_EPS: f64 = 1e-9;

/// Queries with fewer slot samples than this are flagged low-confidence.
pub const MIN_CONFIDENT_SLOTS: usize = 100;

const SCHEMA_VERSION: &str = "1";

fn default_schema_version() -> String {
    SCHEMA_VERSION.to_string()
}

/// Reference voltage distributions per occupant count, on a shared grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccupancyDatabase {
    #[serde(default = "default_schema_version")]
    schema_version: String,
    bin_edges: Vec<f64>,
    entries: BTreeMap<u32, EmpiricalDistribution>,
}

impl OccupancyDatabase {
    /// Shared histogram grid.
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    /// Reference distributions keyed by occupant count.
    pub fn entries(&self) -> &BTreeMap<u32, EmpiricalDistribution> {
        &self.entries
    }

    /// Checks the invariants a freshly deserialized database must satisfy
    /// before it can score anything.
    pub fn validate(&self) -> Result<(), EstimatorError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(EstimatorError::BadDatabase {
                reason: format!(
                    "unsupported schema version {:?}, expected {:?}",
                    self.schema_version, SCHEMA_VERSION
                ),
            });
        }
        if self.bin_edges.len() < 3 {
            return Err(EstimatorError::BadDatabase {
                reason: format!("{} bin edges, need at least 3", self.bin_edges.len()),
            });
        }
        if self
            .bin_edges
            .iter()
            .any(|e| !e.is_finite())
            || self.bin_edges.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(EstimatorError::BadDatabase {
                reason: "bin edges are not finite and strictly increasing".to_string(),
            });
        }
        if self.entries.len() < 2 {
            return Err(EstimatorError::BadDatabase {
                reason: format!("{} entries, need at least 2", self.entries.len()),
            });
        }
        for (label, entry) in &self.entries {
            if entry.bin_edges() != self.bin_edges.as_slice() {
                return Err(EstimatorError::BadDatabase {
                    reason: format!("entry {label} uses a different bin grid"),
                });
            }
            if entry.pdf().iter().any(|&p| !(p > 0.0)) {
                return Err(EstimatorError::BadDatabase {
                    reason: format!("entry {label} has a non-positive pdf bin"),
                });
            }
        }
        Ok(())
    }
}

/// Classification result with the full score table.
#[derive(Debug, Clone, Serialize)]
pub struct OccupancyEstimate {
    /// Winning occupant count.
    pub n_hat: u32,
    /// `KL(query || entry)` for every database entry, in nats.
    pub scores: BTreeMap<u32, f64>,
    /// True when the query carried fewer than [`MIN_CONFIDENT_SLOTS`]
    /// samples.
    pub low_confidence: bool,
}

/// Builds a database from labelled training runs.
///
/// Runs sharing a label are pooled into one distribution. The bin grid is
/// `bin_count` equal-width bins spanning the pooled min and max of all
/// runs together.
pub fn build_occupancy_db(
    runs: &[(u32, &TimeSeries)],
    bin_count: usize,
) -> Result<OccupancyDatabase, EstimatorError> {
    if bin_count < 2 {
        return Err(EstimatorError::BadParameter {
            name: "bin_count",
            requirement: "at least 2",
            value: bin_count as f64,
        });
    }
    let mut by_label: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    for (label, series) in runs {
        by_label
            .entry(*label)
            .or_default()
            .extend_from_slice(series.values());
    }
    if by_label.len() < 2 {
        return Err(EstimatorError::TooFewLabels {
            got: by_label.len(),
        });
    }

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for samples in by_label.values() {
        for &v in samples {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(EstimatorError::DegenerateVoltages);
    }
    let width = (hi - lo) / bin_count as f64;
    let bin_edges: Vec<f64> = (0..=bin_count)
        .map(|i| {
            if i == bin_count {
                hi
            } else {
                lo + width * i as f64
            }
        })
        .collect();
    if bin_edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EstimatorError::DegenerateVoltages);
    }

    let mut entries = BTreeMap::new();
    for (label, samples) in &by_label {
        let dist = EmpiricalDistribution::from_samples(samples, &bin_edges, DB_SMOOTHING_EPS)?;
        entries.insert(*label, dist);
    }
    Ok(OccupancyDatabase {
        schema_version: default_schema_version(),
        bin_edges,
        entries,
    })
}

/// Scores a query series against every database entry and picks the
/// minimum-divergence count.
pub fn estimate_occupancy(
    db: &OccupancyDatabase,
    query: &TimeSeries,
) -> Result<OccupancyEstimate, EstimatorError> {
    db.validate()?;
    let q = EmpiricalDistribution::from_samples(query.values(), &db.bin_edges, DB_SMOOTHING_EPS)?;
    let mut scores = BTreeMap::new();
    let mut best: Option<(u32, f64)> = None;
    for (&label, entry) in &db.entries {
        let score = kl_divergence(&q, entry)?;
        scores.insert(label, score);
        // Strict less-than over ascending labels: an exact tie keeps the
        // smaller count.
        match best {
            Some((_, best_score)) if score >= best_score => {}
            _ => best = Some((label, score)),
        }
    }
    let (n_hat, _) = best.expect("validate guarantees at least two entries");
    Ok(OccupancyEstimate {
        n_hat,
        scores,
        low_confidence: query.len() < MIN_CONFIDENT_SLOTS,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
