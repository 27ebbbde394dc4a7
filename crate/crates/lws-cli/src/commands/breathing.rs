//! `lws breathing {build-dataset|crossval|classify}`: the labelled-dataset
//! workflow, from balanced simulation through cross-validation to
//! single-recording classification.

use std::path::{Path, PathBuf};

use lws_core::ChannelParams;
use lws_mlkit::{
    crossval_stratified, extract_features, knn_predict, read_features_csv, write_features_csv,
    ConfusionMatrix, FeatureScaler, FeatureVector, PredictionRecord,
};
use lws_sim::{simulate_breathing, BreathingClass, BreathingConfig, NoiseConfig};
use serde::Serialize;

use crate::artifacts::{render_json, SCHEMA_VERSION};
use crate::error::CliError;

/// Recording length for generated dataset entries.
pub const DATASET_DURATION_S: f64 = 60.0;
/// Sample rate for generated dataset entries.
pub const DATASET_SAMPLE_RATE_HZ: f64 = 5.0;
/// Chest-to-sensor baseline for generated dataset entries.
pub const DATASET_BASELINE_M: f64 = 1.2;
/// Default signal-to-noise ratio for generated dataset entries.
pub const DEFAULT_DATASET_SNR_DB: f64 = 30.0;

fn dataset_channel() -> ChannelParams {
    ChannelParams::new(1e-4, 2.0, 1.0).expect("fixed dataset channel is valid")
}

/// What `build-dataset` produced.
#[derive(Debug)]
pub struct BuildDatasetOutcome {
    pub out_path: PathBuf,
    pub n_rows: usize,
    pub summary: String,
}

/// Simulates a balanced labelled corpus and writes its feature CSV.
///
/// Every class contributes `per_class` recordings of
/// [`DATASET_DURATION_S`] seconds at [`DATASET_SAMPLE_RATE_HZ`] from a
/// [`DATASET_BASELINE_M`] baseline; per-recording rate and depth are drawn
/// from the class ranges, seeded so the corpus is a pure function of
/// `seed`.
pub fn build_dataset(
    per_class: usize,
    snr_db: f64,
    seed: u64,
    out: &Path,
) -> Result<BuildDatasetOutcome, CliError> {
    if per_class == 0 {
        return Err(CliError::invalid("--per-class must be at least 1"));
    }
    if !(snr_db.is_finite() && snr_db > 0.0) {
        return Err(CliError::invalid(format!(
            "--snr-db must be a positive ratio in dB, got {snr_db}"
        )));
    }
    let noise = NoiseConfig {
        ambient_dc_v: 0.0,
        awgn_snr_db: Some(snr_db),
    };
    let channel = dataset_channel();
    let mut rows = Vec::with_capacity(BreathingClass::ALL.len() * per_class);
    for (ci, &class) in BreathingClass::ALL.iter().enumerate() {
        for i in 0..per_class {
            let sample_seed = seed + (ci * per_class + i) as u64;
            let config = BreathingConfig::sample_for_class(
                class,
                DATASET_BASELINE_M,
                channel.clone(),
                DATASET_DURATION_S,
                DATASET_SAMPLE_RATE_HZ,
                noise.clone(),
                sample_seed,
            );
            let series = simulate_breathing(&config)?;
            rows.push(extract_features(
                &series,
                format!("{}-{i:03}", class.label()),
                Some(class.label().to_string()),
            )?);
        }
    }
    write_features_csv(out, &rows)?;
    let summary = format!(
        "breathing build-dataset: wrote {} ({} rows: {} classes x {per_class}, {snr_db} dB SNR, seed {seed})",
        out.display(),
        rows.len(),
        BreathingClass::ALL.len()
    );
    Ok(BuildDatasetOutcome {
        out_path: out.to_path_buf(),
        n_rows: rows.len(),
        summary,
    })
}

/// JSON artifact written by `crossval`.
#[derive(Debug, Serialize)]
struct CrossvalReport<'a> {
    schema_version: &'static str,
    folds: usize,
    k: usize,
    seed: u64,
    accuracy: f64,
    k_clamped: bool,
    confusion: &'a ConfusionMatrix,
    predictions: &'a [PredictionRecord],
}

/// What `crossval` produced: the headline line, the table, and the JSON
/// artifact body.
#[derive(Debug)]
pub struct CrossvalCmdOutcome {
    pub accuracy: f64,
    pub accuracy_line: String,
    pub table: String,
    pub json: String,
}

/// Runs stratified k-fold cross-validation over a features CSV.
pub fn crossval(
    input: &Path,
    folds: usize,
    k: usize,
    seed: u64,
) -> Result<CrossvalCmdOutcome, CliError> {
    let data = read_features_csv(input)?;
    let outcome = crossval_stratified(&data, folds, k, seed)?;
    let report = CrossvalReport {
        schema_version: SCHEMA_VERSION,
        folds,
        k,
        seed,
        accuracy: outcome.accuracy,
        k_clamped: outcome.k_clamped,
        confusion: &outcome.confusion,
        predictions: &outcome.predictions,
    };
    let mut accuracy_line = format!(
        "crossval: accuracy {:.4} ({} samples, {folds} folds, k {k}, seed {seed})",
        outcome.accuracy,
        data.len()
    );
    if outcome.k_clamped {
        accuracy_line.push_str(" [k clamped to the training-fold size]");
    }
    Ok(CrossvalCmdOutcome {
        accuracy: outcome.accuracy,
        accuracy_line,
        table: outcome.confusion.text_table(),
        json: render_json(&report),
    })
}

/// What `classify` produced.
#[derive(Debug)]
pub struct ClassifyOutcome {
    pub label: String,
    pub k_used: usize,
    pub k_clamped: bool,
}

/// Classifies one recording against a labelled features CSV.
pub fn classify(train: &Path, input: &Path, k: usize) -> Result<ClassifyOutcome, CliError> {
    let train_rows = read_features_csv(train)?;
    let series = lws_sim::read_series_csv(input)?;
    let source_id = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "query".to_string());
    let query = extract_features(&series, source_id, None)?;

    let scaler = FeatureScaler::fit(&train_rows)?;
    let scaled_train: Vec<FeatureVector> = train_rows.iter().map(|f| scaler.transform(f)).collect();
    let scaled_query = scaler.transform(&query);
    let prediction = knn_predict(&scaled_train, &scaled_query, k)?;
    Ok(ClassifyOutcome {
        label: prediction.label,
        k_used: prediction.k_used,
        k_clamped: prediction.k_clamped,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
