//! K-nearest-neighbour classification with set-based tie handling.
//!
//! Distances are plain Euclidean over the nine features, so callers are
//! expected to Z-score both sides first ([`FeatureScaler`]) with
//! statistics from the training set only.
//!
//! Determinism is part of the contract: the prediction must not depend on
//! the order training points are supplied in. Two rules make that hold:
//!
//! - neighbourhood membership is set-based: every point whose distance
//!   equals the k-th smallest is included, even if that grows the vote
//!   beyond k, and
//! - vote ties break by smaller mean distance among the tied classes,
//!   then by lexicographically smaller label.
//!
//! [`FeatureScaler`]: crate::FeatureScaler

use std::collections::BTreeMap;

use serde::Serialize;

use crate::{FeatureVector, MlError};

/// A prediction plus the bookkeeping needed to audit it.
#[derive(Debug, Clone, Serialize)]
pub struct KnnPrediction {
    /// Winning class label.
    pub label: String,
    /// Number of neighbours actually requested after clamping.
    pub k_used: usize,
    /// True when the requested k exceeded the training size and was
    /// clamped down; surfaced as a warning rather than an error.
    pub k_clamped: bool,
}

/// Classifies `query` against labelled training vectors.
pub fn knn_predict(
    train: &[FeatureVector],
    query: &FeatureVector,
    k: usize,
) -> Result<KnnPrediction, MlError> {
    if train.is_empty() {
        return Err(MlError::EmptyTrainingSet);
    }
    if k == 0 {
        return Err(MlError::BadParameter {
            name: "k",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    let k_clamped = k > train.len();
    let k_used = k.min(train.len());

    let mut dists: Vec<(f64, &str)> = Vec::with_capacity(train.len());
    for fv in train {
        let label = fv.require_label()?;
        dists.push((euclidean(fv, query), label));
    }
    dists.sort_by(|a, b| a.0.total_cmp(&b.0));
    let kth = dists[k_used - 1].0;

    // (votes, summed distance) per class over the closed neighbourhood.
    let mut tally: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for &(d, label) in dists.iter().take_while(|&&(d, _)| d <= kth) {
        let entry = tally.entry(label).or_insert((0, 0.0));
        entry.0 += 1;
        entry.1 += d;
    }

    // BTreeMap iteration is label-ascending, so keeping a strictly better
    // candidate resolves residual ties toward the smaller label.
    let mut best: Option<(&str, usize, f64)> = None;
    for (&label, &(votes, dist_sum)) in &tally {
        let mean = dist_sum / votes as f64;
        let better = match best {
            None => true,
            Some((_, best_votes, best_mean)) => {
                votes > best_votes || (votes == best_votes && mean < best_mean)
            }
        };
        if better {
            best = Some((label, votes, mean));
        }
    }
    let (label, _, _) = best.expect("nonempty training set always yields a candidate");
    Ok(KnnPrediction {
        label: label.to_string(),
        k_used,
        k_clamped,
    })
}

fn euclidean(a: &FeatureVector, b: &FeatureVector) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
