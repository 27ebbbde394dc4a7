use lws_core::CoreError;
use thiserror::Error;

/// Validation and I/O errors for scenario generation.
#[derive(Debug, Error)]
pub enum SimError {
    /// A config field that must be strictly positive is not.
    #[error("{field} must be positive, got {value}")]
    NotPositive { field: &'static str, value: f64 },

    /// A config field that must be non-negative is negative.
    #[error("{field} must be non-negative, got {value}")]
    Negative { field: &'static str, value: f64 },

    /// A config field falls outside its documented range.
    #[error("{field} must be in {range}, got {value}")]
    OutOfRange {
        field: &'static str,
        range: &'static str,
        value: f64,
    },

    /// A config field is NaN or infinite.
    #[error("{field} must be finite, got {value}")]
    NotFinite { field: &'static str, value: f64 },

    /// The configured speed_mps and duration_s drive the range past zero, so
    /// the vehicle would cross the sensor plane mid-run.
    #[error(
        "speed_mps and duration_s overrun initial_range_m: range at the last sample is {final_range_m} m"
    )]
    SensorPlaneCrossed { final_range_m: f64 },

    /// The curved-pass angle schedule leaves the open interval (0, pi).
    #[error("initial_beta_rad and angular_speed_rad_s drive beta to {final_beta_rad} rad, outside (0, pi)")]
    BetaLeavesRange { final_beta_rad: f64 },

    /// A breathing parameter disagrees with the configured class.
    #[error("{field} = {value} is outside the {class} range {range}")]
    ClassParameterMismatch {
        class: &'static str,
        field: &'static str,
        range: &'static str,
        value: f64,
    },

    /// The chest excursion would reach or pass the sensor.
    #[error("depth * {excursion_m} m excursion reaches baseline_distance_m = {baseline_m} m")]
    ExcursionReachesSensor { excursion_m: f64, baseline_m: f64 },

    /// Apnea needs room for at least one breathing segment plus a full
    /// pause, so short runs cannot honour the class definition.
    #[error("duration_s = {duration_s} too short for apnea, need at least {minimum_s} s")]
    ApneaTooShort { duration_s: f64, minimum_s: f64 },

    /// A series file does not carry the expected column header.
    #[error("bad CSV header: expected \"{expected}\", got \"{got}\"")]
    BadHeader { expected: &'static str, got: String },

    /// A series file has fewer than two rows, so no sample rate can be
    /// inferred.
    #[error("series CSV needs at least 2 rows, got {rows}")]
    CsvTooShort { rows: usize },

    /// Timestamps in a series file are not uniformly spaced.
    #[error("row {row}: timestamp {got_s} s breaks uniform sampling (expected {expected_s} s)")]
    IrregularSampling {
        row: usize,
        expected_s: f64,
        got_s: f64,
    },

    /// Malformed CSV content (wrong field count, unparseable numbers).
    #[error(transparent)]
    Csv(#[from] csv::Error),

    /// Underlying file-system failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Validation failure bubbled up from the physical-layer types.
    #[error(transparent)]
    Core(#[from] CoreError),
}
