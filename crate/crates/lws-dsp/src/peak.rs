//! In-band spectral peak picking with a prominence guard.
//!
//! The guard compares the band maximum against the median band magnitude: a
//! genuine narrowband component towers over the median, while the maximum
//! of featureless noise sits only a small factor above it. Requiring
//!
//! ```text
//! peak > 0   and   peak >= 3 * median(band)
//! ```
//!
//! turns "there is no periodicity here" into an explicit error instead of a
//! confidently wrong frequency. On raw periodograms noise occasionally
//! spikes past the factor of three; callers that need a reliable guard
//! should smooth the spectrum first (see
//! [`smooth_power_triangular`](crate::smooth_power_triangular)), which
//! concentrates the band maximum of noise toward the median.

use crate::{DspError, Spectrum};

/// A detected spectral peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPeak {
    /// Centre frequency of the winning bin in hertz.
    pub freq_hz: f64,
    /// Magnitude of the winning bin.
    pub magnitude: f64,
}

/// Finds the dominant bin of `spectrum` within `[low_hz, high_hz]`.
///
/// Band edges are inclusive. Ties resolve to the lowest frequency. Returns
/// [`DspError::NoSpectralPeak`] when the band maximum fails the prominence
/// guard, and [`DspError::EmptyBand`] when no bin falls inside the band.
pub fn spectral_peak(
    spectrum: &Spectrum,
    low_hz: f64,
    high_hz: f64,
) -> Result<SpectralPeak, DspError> {
    if !(low_hz.is_finite() && high_hz.is_finite() && low_hz < high_hz) {
        return Err(DspError::EmptyBand { low_hz, high_hz });
    }
    let mut band = Vec::new();
    let mut best: Option<(usize, f64)> = None;
    for (i, &m) in spectrum.magnitudes().iter().enumerate() {
        let f = spectrum.freq_at(i);
        if f < low_hz || f > high_hz {
            continue;
        }
        band.push(m);
        if best.map_or(true, |(_, bm)| m > bm) {
            best = Some((i, m));
        }
    }
    let (bin, magnitude) = best.ok_or(DspError::EmptyBand { low_hz, high_hz })?;
    let med = median(&mut band);
    if !(magnitude > 0.0 && magnitude >= 3.0 * med) {
        return Err(DspError::NoSpectralPeak);
    }
    Ok(SpectralPeak {
        freq_hz: spectrum.freq_at(bin),
        magnitude,
    })
}

/// Median with the even-count convention of averaging the middle pair.
fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("magnitudes are finite"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
