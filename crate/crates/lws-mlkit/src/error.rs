use lws_dsp::DspError;
use thiserror::Error;

/// Failures in feature extraction, classification and cross-validation.
#[derive(Debug, Error)]
pub enum MlError {
    /// The series is shorter than the feature contract allows.
    #[error("series spans {got_s} s, feature extraction needs at least {needed_s} s")]
    TooShortDuration { needed_s: f64, got_s: f64 },

    /// The series is sampled too slowly for the spectral features.
    #[error("sample rate {got_hz} Hz is below the required {needed_hz} Hz")]
    RateTooLow { needed_hz: f64, got_hz: f64 },

    /// A feature value is NaN or infinite.
    #[error("feature {index} is not finite: {value}")]
    NotFinite { index: usize, value: f64 },

    /// A sample that must carry a label does not.
    #[error("sample {source_id:?} has no label")]
    MissingLabel { source_id: String },

    /// A label was recorded that the confusion matrix was not built for.
    #[error("label {label:?} is not in the matrix's class list")]
    UnknownLabel { label: String },

    /// Stratified folding needs every class to fill every fold.
    #[error("class {label:?} has {members} members, need at least {k_folds} for {k_folds} folds")]
    ClassTooSmall {
        label: String,
        members: usize,
        k_folds: usize,
    },

    /// No training points were supplied.
    #[error("training set is empty")]
    EmptyTrainingSet,

    /// Too few samples for the requested evaluation.
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    /// A scalar argument is outside its documented range.
    #[error("{name} must be {requirement}, got {value}")]
    BadParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// A feature CSV file does not start with the expected header.
    #[error("bad feature CSV header: expected {expected:?}, got {got:?}")]
    BadHeader { expected: String, got: String },

    /// A feature CSV row does not parse as id, label and 9 floats.
    #[error("feature CSV row {row}: {reason}")]
    BadRow { row: usize, reason: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Dsp(#[from] DspError),
}
