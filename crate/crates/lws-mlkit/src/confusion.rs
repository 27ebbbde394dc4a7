//! Confusion matrix with exact accuracy bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::MlError;

/// Truth-by-prediction counts over a fixed, ordered class list.
///
/// Rows are the true classes, columns the predicted ones, both in the
/// order of `labels`. Accuracy is always `trace / total`, so the reported
/// number can be cross-checked against the matrix it came with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    labels: Vec<String>,
    counts: Vec<Vec<u64>>,
}

impl ConfusionMatrix {
    /// An all-zero matrix over the given class list.
    pub fn new(labels: Vec<String>) -> Result<Self, MlError> {
        if labels.is_empty() {
            return Err(MlError::BadParameter {
                name: "labels",
                requirement: "nonempty",
                value: 0.0,
            });
        }
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(MlError::UnknownLabel {
                    label: format!("duplicate class {:?}", pair[0]),
                });
            }
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(MlError::UnknownLabel {
                label: "duplicate class in label list".to_string(),
            });
        }
        let n = labels.len();
        Ok(Self {
            labels,
            counts: vec![vec![0; n]; n],
        })
    }

    /// Adds one (truth, prediction) observation.
    pub fn record(&mut self, truth: &str, predicted: &str) -> Result<(), MlError> {
        let row = self.index_of(truth)?;
        let col = self.index_of(predicted)?;
        self.counts[row][col] += 1;
        Ok(())
    }

    fn index_of(&self, label: &str) -> Result<usize, MlError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| MlError::UnknownLabel {
                label: label.to_string(),
            })
    }

    /// Ordered class list.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Count rows, truth-major.
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    /// Total observations.
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Correctly classified observations.
    pub fn trace(&self) -> u64 {
        (0..self.labels.len()).map(|i| self.counts[i][i]).sum()
    }

    /// `trace / total`; 0 for an empty matrix.
    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        self.trace() as f64 / total as f64
    }

    /// Observations per true class, in label order.
    pub fn row_sums(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    /// Plain-text rendering with aligned columns; rows are truth, columns
    /// are predictions.
    pub fn text_table(&self) -> String {
        let mut col_width = "truth \\ predicted".len();
        for label in &self.labels {
            col_width = col_width.max(label.len());
        }
        for row in &self.counts {
            for &c in row {
                col_width = col_width.max(c.to_string().len());
            }
        }
        let mut out = String::new();
        out.push_str(&format!("{:>col_width$}", "truth \\ predicted"));
        for label in &self.labels {
            out.push_str(&format!("  {label:>col_width$}"));
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.counts) {
            out.push_str(&format!("{label:>col_width$}"));
            for &c in row {
                out.push_str(&format!("  {c:>col_width$}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "accuracy: {}/{} = {:.4}\n",
            self.trace(),
            self.total(),
            self.accuracy()
        ));
        out
    }
}

impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_table())
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
