//! Handcrafted waveform features and their scaling.
//!
//! [`extract_features`] reduces a time series to exactly nine numbers
//! whose order is a format contract (feature CSVs and trained artifacts
//! depend on it):
//!
//! | # | feature |
//! |---|---------|
//! | 1 | RMS of the detrended signal |
//! | 2 | variance of the raw signal |
//! | 3 | dominant frequency in Hz, 0 when no spectral peak clears the prominence guard |
//! | 4 | dominant-peak power fraction of the smoothed spectrum, 0 when no peak |
//! | 5 | power fraction below 0.1 Hz |
//! | 6 | zero-crossing rate of the detrended signal, per second |
//! | 7 | peak-to-peak amplitude of the raw signal |
//! | 8 | flat fraction: share of sample steps with slope magnitude below 1e-4 of the peak-to-peak swing per second |
//! | 9 | inter-peak interval coefficient of variation, 0 with fewer than 3 peaks |
//!
//! Spectral features (3-5) come from one shared spectrum: the detrended
//! signal, zero-padded by a factor of 8 and smoothed with a 0.05 Hz
//! triangular kernel. The dominant-frequency search band is 0.05 to 1.0 Hz
//! (3 to 60 events per minute), which keeps the features meaningful at the
//! 5 Hz minimum sample rate without any bandpass stage; series at that
//! rate are too short for a long FIR anyway.

use lws_core::TimeSeries;
use lws_dsp::{detrend_linear, fft_magnitude, smooth_power_triangular, spectral_peak, DspError};
use serde::{Deserialize, Serialize};

use crate::MlError;

/// Number of features; the vector layout above is a format contract.
pub const FEATURE_COUNT: usize = 9;

/// Shortest series the feature definitions stay meaningful on.
pub const MIN_DURATION_S: f64 = 30.0;

/// Slowest sample rate the spectral features stay meaningful at.
pub const MIN_SAMPLE_RATE_HZ: f64 = 5.0;

/// Dominant-frequency search band (features 3 and 4).
pub const DOMINANT_BAND_HZ: (f64, f64) = (0.05, 1.0);

/// Upper edge of the low-frequency band of feature 5.
pub const LOW_BAND_EDGE_HZ: f64 = 0.1;

const SPECTRUM_PAD_FACTOR: usize = 8;
const SMOOTHING_HALF_WIDTH_HZ: f64 = 0.05;
const FLAT_SLOPE_FRACTION_PER_S: f64 = 1e-4;
const PEAK_HEIGHT_FRACTION: f64 = 0.5;

/// One sample: nine ordered features plus provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    /// Where the sample came from (file stem, run id, ...).
    pub source_id: String,
    /// Class label when known; `None` for unlabeled queries.
    pub label: Option<String>,
    values: [f64; FEATURE_COUNT],
}

impl FeatureVector {
    /// Builds a vector, rejecting non-finite entries.
    pub fn new(
        source_id: impl Into<String>,
        label: Option<String>,
        values: [f64; FEATURE_COUNT],
    ) -> Result<Self, MlError> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(MlError::NotFinite { index, value });
            }
        }
        Ok(Self {
            source_id: source_id.into(),
            label,
            values,
        })
    }

    /// The nine features, in contract order.
    pub fn values(&self) -> &[f64; FEATURE_COUNT] {
        &self.values
    }

    /// The label, or an error naming the sample; for call sites that
    /// require labeled data.
    pub fn require_label(&self) -> Result<&str, MlError> {
        self.label.as_deref().ok_or_else(|| MlError::MissingLabel {
            source_id: self.source_id.clone(),
        })
    }
}

/// Computes the nine-feature summary of a series.
pub fn extract_features(
    series: &TimeSeries,
    source_id: impl Into<String>,
    label: Option<String>,
) -> Result<FeatureVector, MlError> {
    if series.duration_s() < MIN_DURATION_S {
        return Err(MlError::TooShortDuration {
            needed_s: MIN_DURATION_S,
            got_s: series.duration_s(),
        });
    }
    if series.sample_rate_hz() < MIN_SAMPLE_RATE_HZ {
        return Err(MlError::RateTooLow {
            needed_hz: MIN_SAMPLE_RATE_HZ,
            got_hz: series.sample_rate_hz(),
        });
    }

    let raw = series.values();
    let n = raw.len() as f64;
    let detrended = detrend_linear(series)?;
    let det = detrended.values();

    let rms = (det.iter().map(|v| v * v).sum::<f64>() / n).sqrt();

    let mean = raw.iter().sum::<f64>() / n;
    let variance = raw.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;

    let nfft = (SPECTRUM_PAD_FACTOR * det.len()).next_power_of_two();
    let spectrum = fft_magnitude(&detrended, Some(nfft))?;
    let smoothed = smooth_power_triangular(&spectrum, SMOOTHING_HALF_WIDTH_HZ)?;
    let total_power: f64 = smoothed.magnitudes().iter().map(|m| m * m).sum();
    let (dominant_hz, peak_fraction) =
        match spectral_peak(&smoothed, DOMINANT_BAND_HZ.0, DOMINANT_BAND_HZ.1) {
            Ok(peak) => (
                peak.freq_hz,
                peak.magnitude * peak.magnitude / total_power,
            ),
            Err(DspError::NoSpectralPeak) => (0.0, 0.0),
            Err(e) => return Err(e.into()),
        };
    let low_band_power: f64 = smoothed
        .magnitudes()
        .iter()
        .enumerate()
        .take_while(|(i, _)| smoothed.freq_at(*i) < LOW_BAND_EDGE_HZ)
        .map(|(_, m)| m * m)
        .sum();
    let low_band_fraction = if total_power > 0.0 {
        low_band_power / total_power
    } else {
        0.0
    };

    let crossings = det
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0)
        .count() as f64;
    let zero_crossing_rate = crossings / series.duration_s();

    let (raw_min, raw_max) = min_max(raw);
    let peak_to_peak = raw_max - raw_min;

    let flat_fraction = if peak_to_peak == 0.0 {
        1.0
    } else {
        let threshold = FLAT_SLOPE_FRACTION_PER_S * peak_to_peak;
        let rate = series.sample_rate_hz();
        let flat_steps = raw
            .windows(2)
            .filter(|w| ((w[1] - w[0]) * rate).abs() < threshold)
            .count() as f64;
        flat_steps / (raw.len() - 1) as f64
    };

    let interval_cv = inter_peak_interval_cv(det, series.sample_rate_hz());

    FeatureVector::new(
        source_id,
        label,
        [
            rms,
            variance,
            dominant_hz,
            peak_fraction,
            low_band_fraction,
            zero_crossing_rate,
            peak_to_peak,
            flat_fraction,
            interval_cv,
        ],
    )
}

/// Coefficient of variation of the gaps between prominent local maxima.
///
/// A peak is a strict local maximum reaching at least half the detrended
/// signal's own maximum. Regular breathing gives near-equal gaps (CV near
/// 0); pauses and erratic motion spread them out.
fn inter_peak_interval_cv(det: &[f64], sample_rate_hz: f64) -> f64 {
    let max = det.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    if !(max > 0.0) {
        return 0.0;
    }
    let height = PEAK_HEIGHT_FRACTION * max;
    let mut peak_times = Vec::new();
    for i in 1..det.len().saturating_sub(1) {
        if det[i] > det[i - 1] && det[i] > det[i + 1] && det[i] >= height {
            peak_times.push(i as f64 / sample_rate_hz);
        }
    }
    if peak_times.len() < 3 {
        return 0.0;
    }
    let intervals: Vec<f64> = peak_times.windows(2).map(|w| w[1] - w[0]).collect();
    let m = intervals.iter().sum::<f64>() / intervals.len() as f64;
    let var = intervals.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / intervals.len() as f64;
    var.sqrt() / m
}

fn min_max(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Per-feature Z-score statistics, fit on training data only.
///
/// Features that are constant in training (standard deviation zero) are
/// passed through centred but unscaled, so they cannot blow up a query
/// that happens to differ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureScaler {
    means: [f64; FEATURE_COUNT],
    stds: [f64; FEATURE_COUNT],
}

impl FeatureScaler {
    /// Fits means and standard deviations to the training vectors.
    pub fn fit(train: &[FeatureVector]) -> Result<Self, MlError> {
        if train.is_empty() {
            return Err(MlError::EmptyTrainingSet);
        }
        let n = train.len() as f64;
        let mut means = [0.0; FEATURE_COUNT];
        let mut stds = [0.0; FEATURE_COUNT];
        for j in 0..FEATURE_COUNT {
            let mean = train.iter().map(|fv| fv.values[j]).sum::<f64>() / n;
            let var = train
                .iter()
                .map(|fv| (fv.values[j] - mean) * (fv.values[j] - mean))
                .sum::<f64>()
                / n;
            means[j] = mean;
            stds[j] = if var > 0.0 { var.sqrt() } else { 1.0 };
        }
        Ok(Self { means, stds })
    }

    /// Applies the fitted transform, keeping provenance and label.
    pub fn transform(&self, fv: &FeatureVector) -> FeatureVector {
        let mut values = [0.0; FEATURE_COUNT];
        for j in 0..FEATURE_COUNT {
            values[j] = (fv.values[j] - self.means[j]) / self.stds[j];
        }
        FeatureVector {
            source_id: fv.source_id.clone(),
            label: fv.label.clone(),
            values,
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
