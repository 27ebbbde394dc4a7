//! Stratified k-fold and leave-one-out cross-validation.
//!
//! Both evaluators share the leakage discipline that makes the numbers
//! honest: for every fold, Z-score statistics are fitted on that fold's
//! training portion only, and the held-out samples are transformed with
//! those statistics. A held-out sample can never influence the scaler it
//! is judged against.
//!
//! Stratification shuffles each class separately (seeded) and deals its
//! members round-robin across folds, so every fold sees every class even
//! at small dataset sizes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::{knn_predict, ConfusionMatrix, FeatureScaler, FeatureVector, MlError};

/// Default neighbour count for the classification pipelines.
pub const DEFAULT_KNN_K: usize = 5;

/// One held-out prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionRecord {
    /// Sample provenance, copied from the feature vector.
    pub source_id: String,
    /// True label.
    pub truth: String,
    /// Predicted label.
    pub predicted: String,
}

/// Cross-validation result: accuracy, pooled matrix and the per-sample
/// audit trail.
#[derive(Debug, Clone, Serialize)]
pub struct CrossvalOutcome {
    /// Pooled accuracy; always exactly `confusion.accuracy()`.
    pub accuracy: f64,
    /// Pooled confusion matrix over all held-out predictions.
    pub confusion: ConfusionMatrix,
    /// Every held-out prediction, in evaluation order.
    pub predictions: Vec<PredictionRecord>,
    /// True when any fold clamped the neighbour count.
    pub k_clamped: bool,
}

/// Seeded stratified k-fold cross-validation of a KNN classifier.
pub fn crossval_stratified(
    data: &[FeatureVector],
    k_folds: usize,
    knn_k: usize,
    seed: u64,
) -> Result<CrossvalOutcome, MlError> {
    if k_folds < 2 {
        return Err(MlError::BadParameter {
            name: "k_folds",
            requirement: "at least 2",
            value: k_folds as f64,
        });
    }
    let groups = group_by_label(data)?;
    for (label, members) in &groups {
        if members.len() < k_folds {
            return Err(MlError::ClassTooSmall {
                label: label.clone(),
                members: members.len(),
                k_folds,
            });
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); k_folds];
    for members in groups.values() {
        let mut shuffled = members.clone();
        shuffled.shuffle(&mut rng);
        for (j, &idx) in shuffled.iter().enumerate() {
            folds[j % k_folds].push(idx);
        }
    }

    evaluate_folds(data, &folds, groups.keys().cloned().collect(), knn_k)
}

/// Leave-one-out cross-validation; deterministic without a seed.
pub fn loocv(data: &[FeatureVector], knn_k: usize) -> Result<CrossvalOutcome, MlError> {
    if data.len() < 2 {
        return Err(MlError::TooFewSamples {
            needed: 2,
            got: data.len(),
        });
    }
    let groups = group_by_label(data)?;
    let folds: Vec<Vec<usize>> = (0..data.len()).map(|i| vec![i]).collect();
    evaluate_folds(data, &folds, groups.keys().cloned().collect(), knn_k)
}

/// Indices per label, label-ascending; errors on any unlabeled sample.
fn group_by_label(data: &[FeatureVector]) -> Result<BTreeMap<String, Vec<usize>>, MlError> {
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, fv) in data.iter().enumerate() {
        groups
            .entry(fv.require_label()?.to_string())
            .or_default()
            .push(i);
    }
    Ok(groups)
}

fn evaluate_folds(
    data: &[FeatureVector],
    folds: &[Vec<usize>],
    labels: Vec<String>,
    knn_k: usize,
) -> Result<CrossvalOutcome, MlError> {
    let mut confusion = ConfusionMatrix::new(labels)?;
    let mut predictions = Vec::new();
    let mut k_clamped = false;
    for fold in folds {
        if fold.is_empty() {
            continue;
        }
        let mut in_test = vec![false; data.len()];
        for &i in fold {
            in_test[i] = true;
        }
        let train: Vec<FeatureVector> = data
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_test[*i])
            .map(|(_, fv)| fv.clone())
            .collect();
        let scaler = FeatureScaler::fit(&train)?;
        let train_scaled: Vec<FeatureVector> =
            train.iter().map(|fv| scaler.transform(fv)).collect();
        for &i in fold {
            let query = scaler.transform(&data[i]);
            let pred = knn_predict(&train_scaled, &query, knn_k)?;
            k_clamped |= pred.k_clamped;
            let truth = data[i].require_label()?.to_string();
            confusion.record(&truth, &pred.label)?;
            predictions.push(PredictionRecord {
                source_id: data[i].source_id.clone(),
                truth,
                predicted: pred.label,
            });
        }
    }
    Ok(CrossvalOutcome {
        accuracy: confusion.accuracy(),
        confusion,
        predictions,
        k_clamped,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
