//! Spectral rate estimation for slow physiological rhythms.
//!
//! One pipeline serves both respiration and heart rate; only the search
//! band differs. The stages, in order:
//!
//! 1. linear detrend, to remove the DC level and any slow drift,
//! 2. a degeneracy check that rejects effectively constant input before
//!    the filter can manufacture structure out of rounding noise,
//! 3. an odd-length windowed-sinc bandpass over the search band,
//! 4. a zero-padded magnitude spectrum (pad factor 8, rounded up to a
//!    power of two) for fine frequency readout,
//! 5. triangular power-domain smoothing, which suppresses the spurious
//!    single-bin extremes of a raw periodogram while leaving genuine
//!    narrowband peaks in place, and
//! 6. peak search over the band with a peak-vs-median prominence guard.
//!
//! The guard makes "no peak" an explicit outcome: noise-only input
//! reports [`DspError::NoSpectralPeak`] instead of a confident rate.

use lws_core::TimeSeries;
use lws_dsp::{
    bandpass_fir, detrend_linear, fft_magnitude, smooth_power_triangular, spectral_peak, DspError,
};
use serde::Serialize;

use crate::EstimatorError;

/// Respiration search band in Hz (6 to 30 breaths per minute).
pub const RESPIRATION_BAND_HZ: (f64, f64) = (0.1, 0.5);

/// Heart-rate search band in Hz (48 to 132 beats per minute).
pub const HEART_BAND_HZ: (f64, f64) = (0.8, 2.2);

/// Tap count of the bandpass stage. Odd, so the filter delay is an
/// integer number of samples and can be compensated exactly.
pub const BANDPASS_TAPS: usize = 255;

/// Zero-padding factor applied before the FFT.
pub const SPECTRUM_PAD_FACTOR: usize = 8;

/// Half-width of the triangular spectral smoother, in Hz.
pub const SMOOTHING_HALF_WIDTH_HZ: f64 = 0.05;

/// Shortest usable window, in cycles of the band's lowest frequency.
const MIN_CYCLES_IN_WINDOW: f64 = 3.0;

/// A detrended series whose peak-to-peak swing is below this fraction of
/// the raw series' own scale is rounding noise, not signal.
const DEGENERACY_REL_TOL: f64 = 1e-9;

/// A rate read off the smoothed spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct RateEstimate {
    /// Estimated rate in events per minute: exactly `60 * f_max_hz`.
    pub rate_bpm: f64,
    /// Frequency of the winning spectral bin, in Hz.
    pub f_max_hz: f64,
    /// Smoothed magnitude at that bin.
    pub peak_magnitude: f64,
    /// Lower edge of the band that was searched, in Hz.
    pub band_low_hz: f64,
    /// Upper edge of the band that was searched, in Hz.
    pub band_high_hz: f64,
}

/// Runs the full rate pipeline over an arbitrary band.
pub fn estimate_rate(
    series: &TimeSeries,
    band_low_hz: f64,
    band_high_hz: f64,
) -> Result<RateEstimate, EstimatorError> {
    let nyquist = series.sample_rate_hz() / 2.0;
    if !(band_low_hz.is_finite() && band_low_hz > 0.0) {
        return Err(EstimatorError::BadParameter {
            name: "band_low_hz",
            requirement: "finite and positive",
            value: band_low_hz,
        });
    }
    if !(band_high_hz.is_finite() && band_high_hz > band_low_hz && band_high_hz < nyquist) {
        return Err(EstimatorError::BadParameter {
            name: "band_high_hz",
            requirement: "above the band's lower edge and below Nyquist",
            value: band_high_hz,
        });
    }
    let needed_s = MIN_CYCLES_IN_WINDOW / band_low_hz;
    if series.duration_s() < needed_s {
        return Err(EstimatorError::SeriesTooShort {
            needed_s,
            got_s: series.duration_s(),
        });
    }

    let detrended = detrend_linear(series)?;
    if is_degenerate(series.values(), detrended.values()) {
        return Err(EstimatorError::Dsp(DspError::NoSpectralPeak));
    }

    let filtered = bandpass_fir(&detrended, band_low_hz, band_high_hz, BANDPASS_TAPS)?;
    let nfft = (SPECTRUM_PAD_FACTOR * filtered.len()).next_power_of_two();
    let spectrum = fft_magnitude(&filtered, Some(nfft))?;
    let smoothed = smooth_power_triangular(&spectrum, SMOOTHING_HALF_WIDTH_HZ)?;
    let peak = spectral_peak(&smoothed, band_low_hz, band_high_hz)?;

    Ok(RateEstimate {
        rate_bpm: 60.0 * peak.freq_hz,
        f_max_hz: peak.freq_hz,
        peak_magnitude: peak.magnitude,
        band_low_hz,
        band_high_hz,
    })
}

/// Respiration rate over [`RESPIRATION_BAND_HZ`].
pub fn estimate_respiration_rate(series: &TimeSeries) -> Result<RateEstimate, EstimatorError> {
    estimate_rate(series, RESPIRATION_BAND_HZ.0, RESPIRATION_BAND_HZ.1)
}

/// Heart rate over [`HEART_BAND_HZ`].
pub fn estimate_heart_rate(series: &TimeSeries) -> Result<RateEstimate, EstimatorError> {
    estimate_rate(series, HEART_BAND_HZ.0, HEART_BAND_HZ.1)
}

/// True when the detrended residual is rounding noise relative to the raw
/// series' own scale (its mean level or its swing, whichever is larger).
///
/// An exactly constant series detrends to tiny nonzero residuals, not to
/// exact zeros, so this must be a relative test rather than `== 0`.
fn is_degenerate(raw: &[f64], detrended: &[f64]) -> bool {
    let (raw_min, raw_max) = min_max(raw);
    let raw_mean = raw.iter().sum::<f64>() / raw.len() as f64;
    let scale = raw_mean.abs().max(raw_max - raw_min);
    let (d_min, d_max) = min_max(detrended);
    d_max - d_min <= DEGENERACY_REL_TOL * scale
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

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
