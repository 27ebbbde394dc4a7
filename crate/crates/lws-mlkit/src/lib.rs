//! Minimal, self-contained machine-learning layer for waveform
//! classification: handcrafted features, a KNN classifier with
//! deterministic tie rules, stratified and leave-one-out
//! cross-validation, and confusion-matrix reporting.
//!
//! The module is deliberately free of model-training machinery; the
//! feature definitions ([`extract_features`]) plus the evaluation
//! discipline (per-fold scaling, seeded folds) carry the whole
//! classification story, and everything is reproducible bit for bit from
//! a seed.

mod confusion;
mod crossval;
mod error;
mod features;
mod io;
mod knn;

pub use confusion::ConfusionMatrix;
pub use crossval::{
    crossval_stratified, loocv, CrossvalOutcome, PredictionRecord, DEFAULT_KNN_K,
};
pub use error::MlError;
pub use features::{
    extract_features, FeatureScaler, FeatureVector, DOMINANT_BAND_HZ, FEATURE_COUNT,
    LOW_BAND_EDGE_HZ, MIN_DURATION_S, MIN_SAMPLE_RATE_HZ,
};
pub use io::{read_features_csv, write_features_csv, FEATURES_CSV_HEADER};
pub use knn::{knn_predict, KnnPrediction};
