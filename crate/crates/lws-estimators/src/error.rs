use lws_core::CoreError;
use lws_dsp::DspError;
use thiserror::Error;

/// Estimation failures.
///
/// Every variant maps to a stable machine-readable reason code via
/// [`EstimatorError::reason_code`], which the command-line layer emits
/// alongside exit code 3 so scripts can branch without parsing prose.
#[derive(Debug, Error)]
pub enum EstimatorError {
    /// Fewer usable samples than the estimator needs after dropping the
    /// ones that failed preconditions.
    #[error("only {usable} usable samples, need at least {needed}")]
    TooFewUsable { needed: usize, usable: usize },

    /// Paired input vectors of different lengths.
    #[error("input lengths differ: {left} vs {right}")]
    MismatchedLengths { left: usize, right: usize },

    /// An input sample violates a precondition (nonpositive distance or
    /// power, non-finite value).
    #[error("sample {index}: {name} = {value} is not a positive finite value")]
    InvalidSample {
        index: usize,
        name: &'static str,
        value: f64,
    },

    /// All calibration distances coincide, so no slope can be fit.
    #[error("all {n_points} calibration points share one distance; the fit is rank-deficient")]
    RankDeficient { n_points: usize },

    /// The fitted path-loss parameters are outside the physical domain.
    #[error("fit produced non-physical path-loss exponent {gamma}")]
    NonPhysicalFit { gamma: f64 },

    /// The series is too short to observe the requested band.
    #[error("series spans {got_s} s, need at least {needed_s} s for this band")]
    SeriesTooShort { needed_s: f64, got_s: f64 },

    /// A scalar parameter is outside its documented range.
    #[error("{name} must be {requirement}, got {value}")]
    BadParameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// An occupancy database needs at least two distinct labels to
    /// discriminate anything.
    #[error("occupancy database needs at least 2 distinct labels, got {got}")]
    TooFewLabels { got: usize },

    /// All pooled voltages are identical, so no histogram grid exists.
    #[error("pooled voltages span zero range; cannot build histogram edges")]
    DegenerateVoltages,

    /// A loaded occupancy database fails its structural invariants.
    #[error("occupancy database invalid: {reason}")]
    BadDatabase { reason: String },

    /// Failure inside a signal-processing primitive (including the
    /// no-spectral-peak guard).
    #[error(transparent)]
    Dsp(#[from] DspError),

    /// Validation failure bubbled up from the physical-layer types.
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl EstimatorError {
    /// Stable snake_case code identifying the failure class.
    pub fn reason_code(&self) -> &'static str {
        match self {
            EstimatorError::TooFewUsable { .. } => "too_few_usable_samples",
            EstimatorError::MismatchedLengths { .. } => "mismatched_inputs",
            EstimatorError::InvalidSample { .. } => "invalid_sample",
            EstimatorError::RankDeficient { .. } => "rank_deficient",
            EstimatorError::NonPhysicalFit { .. } => "non_physical_fit",
            EstimatorError::SeriesTooShort { .. } => "series_too_short",
            EstimatorError::BadParameter { .. } => "invalid_parameter",
            EstimatorError::TooFewLabels { .. } => "too_few_labels",
            EstimatorError::DegenerateVoltages => "degenerate_voltages",
            EstimatorError::BadDatabase { .. } => "bad_database",
            EstimatorError::Dsp(DspError::NoSpectralPeak) => "no_spectral_peak",
            EstimatorError::Dsp(DspError::TooShort { .. }) => "series_too_short",
            EstimatorError::Dsp(_) => "dsp_error",
            EstimatorError::Core(_) => "invalid_parameter",
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
