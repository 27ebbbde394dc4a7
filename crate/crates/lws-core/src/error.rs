use thiserror::Error;

/// Validation and domain errors raised by the physical-layer types.
///
/// Every variant names the offending quantity so callers can surface the
/// message directly; none of them are recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A parameter that must be strictly positive was zero or negative.
    #[error("{name} must be > 0, got {value}")]
    NotPositive { name: &'static str, value: f64 },

    /// A parameter that must be nonnegative was negative.
    #[error("{name} must be >= 0, got {value}")]
    Negative { name: &'static str, value: f64 },

    /// A parameter fell outside its documented open or closed interval.
    #[error("{name} must lie in {range}, got {value}")]
    OutOfRange {
        name: &'static str,
        range: &'static str,
        value: f64,
    },

    /// A parameter was NaN or infinite where a finite value is required.
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    /// Lateral offset reached or exceeded the link distance, which makes the
    /// geometric gain term singular.
    #[error("lateral offset ({offset_m} m) must be smaller than the link distance ({distance_m} m)")]
    OffsetExceedsDistance { offset_m: f64, distance_m: f64 },

    /// A time series was constructed with no samples.
    #[error("time series must contain at least one sample")]
    EmptySeries,

    /// A time series sample was NaN or infinite.
    #[error("time series sample {index} is not finite ({value})")]
    NonFiniteSample { index: usize, value: f64 },
}
