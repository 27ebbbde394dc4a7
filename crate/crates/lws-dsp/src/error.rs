use thiserror::Error;

/// Errors produced by the signal-processing primitives.
#[derive(Debug, Error)]
pub enum DspError {
    /// The input series has fewer samples than the operation requires.
    #[error("series of {got} samples is too short, need at least {needed}")]
    TooShort { needed: usize, got: usize },

    /// A requested FFT length is not a power of two or is shorter than the
    /// signal it must hold.
    #[error("FFT length {requested} invalid for a {len}-sample signal: must be a power of two >= len")]
    BadFftLength { requested: usize, len: usize },

    /// A filter band does not satisfy `0 < low < high < nyquist`.
    #[error("band [{low_hz}, {high_hz}] Hz invalid for Nyquist {nyquist_hz} Hz")]
    BadBand {
        low_hz: f64,
        high_hz: f64,
        nyquist_hz: f64,
    },

    /// The FIR tap count must be odd (and at least 3) so the filter has an
    /// integer group delay to compensate.
    #[error("tap count {n_taps} invalid: must be odd and >= 3")]
    BadTapCount { n_taps: usize },

    /// A smoothing half-width or smoothing epsilon is negative or non-finite.
    #[error("{name} must be finite and non-negative, got {value}")]
    BadParameter { name: &'static str, value: f64 },

    /// Histogram bin edges must be finite and strictly increasing, with at
    /// least two edges.
    #[error("bin edges must be finite and strictly increasing with at least 2 entries")]
    BadBinEdges,

    /// No samples were supplied to build a distribution from.
    #[error("cannot build a distribution from zero samples")]
    NoSamples,

    /// Two distributions being compared were built on different bin grids.
    #[error("distributions use different bin edges and cannot be compared")]
    BinEdgeMismatch,

    /// KL divergence requires strictly positive mass in every bin; build the
    /// inputs with a positive smoothing epsilon.
    #[error("distribution has a zero-probability bin; smooth it before comparing")]
    ZeroProbabilityBin,

    /// The requested analysis band contains no spectrum bins.
    #[error("band [{low_hz}, {high_hz}] Hz contains no spectrum bins")]
    EmptyBand { low_hz: f64, high_hz: f64 },

    /// No bin in the analysis band stands out from the background, so there
    /// is no defensible peak to report.
    #[error("no spectral peak: band maximum does not clear the prominence guard")]
    NoSpectralPeak,

    /// A non-finite value was produced or supplied where a finite one is
    /// required.
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },

    /// Validation failure bubbled up from the physical-layer types.
    #[error(transparent)]
    Core(#[from] lws_core::CoreError),
}
