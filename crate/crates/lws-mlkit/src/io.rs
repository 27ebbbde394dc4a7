//! Feature dataset persistence.
//!
//! Datasets are flat CSV with a fixed header; the nine feature columns
//! follow the order documented on [`extract_features`]. Floats are
//! written in Rust's shortest round-trip form, so a write/read cycle is
//! bit-exact. An empty `label` cell means unlabeled.
//!
//! [`extract_features`]: crate::extract_features

use std::path::Path;

use crate::{FeatureVector, MlError, FEATURE_COUNT};

/// Exact header line of a feature CSV.
pub const FEATURES_CSV_HEADER: &str = "source_id,label,f1,f2,f3,f4,f5,f6,f7,f8,f9";

/// Writes vectors to `path`, overwriting.
pub fn write_features_csv(path: &Path, data: &[FeatureVector]) -> Result<(), MlError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    writer.write_record(FEATURES_CSV_HEADER.split(','))?;
    for fv in data {
        let mut record = Vec::with_capacity(2 + FEATURE_COUNT);
        record.push(fv.source_id.clone());
        record.push(fv.label.clone().unwrap_or_default());
        for v in fv.values() {
            record.push(format!("{v}"));
        }
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a feature CSV written by [`write_features_csv`] (or by hand, as
/// long as the header and column count match).
pub fn read_features_csv(path: &Path) -> Result<Vec<FeatureVector>, MlError> {
    // Flexible so short rows reach the column-count check below and get
    // a row-numbered error instead of a generic CSV one.
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)?;
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != FEATURES_CSV_HEADER {
        return Err(MlError::BadHeader {
            expected: FEATURES_CSV_HEADER.to_string(),
            got: header,
        });
    }
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // 1-based, after the header line
        let record = record?;
        if record.len() != 2 + FEATURE_COUNT {
            return Err(MlError::BadRow {
                row,
                reason: format!("{} columns, expected {}", record.len(), 2 + FEATURE_COUNT),
            });
        }
        let source_id = record[0].to_string();
        let label = if record[1].is_empty() {
            None
        } else {
            Some(record[1].to_string())
        };
        let mut values = [0.0; FEATURE_COUNT];
        for (j, v) in values.iter_mut().enumerate() {
            let cell = &record[2 + j];
            *v = cell.parse::<f64>().map_err(|e| MlError::BadRow {
                row,
                reason: format!("column f{}: {cell:?}: {e}", j + 1),
            })?;
        }
        out.push(FeatureVector::new(source_id, label, values)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
