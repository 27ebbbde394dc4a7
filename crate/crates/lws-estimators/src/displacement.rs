//! Chest-displacement readout from received power.
//!
//! Each voltage sample is inverted through the detector and the power law
//! to a distance, and displacement is reported toward the sensor relative
//! to a caller-supplied reference distance:
//!
//! ```text
//! x_i = reference - D_i
//! ```
//!
//! Samples whose implied power is nonpositive (noise below the dark floor,
//! dropouts) cannot be inverted. They are replaced by the nearest previous
//! valid displacement so the output stays on the input's time grid, and
//! counted so callers can judge how much of the series was reconstructed.

use lws_core::{ChannelParams, Photodetector, TimeSeries};

use crate::EstimatorError;

/// Displacement series plus reconstruction bookkeeping.
#[derive(Debug, Clone)]
pub struct DisplacementEstimate {
    /// Displacement toward the sensor in metres, on the input time grid.
    pub series: TimeSeries,
    /// Samples that could not be inverted and were filled from a
    /// neighbour.
    pub samples_invalid: usize,
}

/// Inverts a voltage series to displacement toward the sensor.
pub fn estimate_displacement(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    reference_distance_m: f64,
) -> Result<DisplacementEstimate, EstimatorError> {
    if !(reference_distance_m.is_finite() && reference_distance_m > 0.0) {
        return Err(EstimatorError::BadParameter {
            name: "reference_distance_m",
            requirement: "finite and positive",
            value: reference_distance_m,
        });
    }
    let mut raw: Vec<Option<f64>> = Vec::with_capacity(series.len());
    let mut samples_invalid = 0usize;
    for &v in series.values() {
        let power = detector.power_from_voltage(v)?;
        if power <= 0.0 {
            raw.push(None);
            samples_invalid += 1;
            continue;
        }
        let distance = channel.distance_from_power(power)?;
        raw.push(Some(reference_distance_m - distance));
    }

    let first_valid = match raw.iter().flatten().next() {
        Some(&x) => x,
        None => {
            return Err(EstimatorError::TooFewUsable {
                needed: 1,
                usable: 0,
            })
        }
    };
    let mut filled = Vec::with_capacity(raw.len());
    let mut last = first_valid;
    for x in raw {
        if let Some(x) = x {
            last = x;
        }
        filled.push(last);
    }
    Ok(DisplacementEstimate {
        series: series.with_values(filled)?,
        samples_invalid,
    })
}

/// Peak displacement of a raised-sinusoid motion pattern.
///
/// For `x(t) = A (1 - cos(2 pi f t)) / 2` the mean is `A/2` and the
/// population standard deviation is `A / (2 sqrt 2)`, so
/// `|mean| + sqrt(2) * std` recovers `A` exactly while averaging down
/// zero-mean noise, unlike a raw max-of-series readout whose error is the
/// full noise envelope.
pub fn sinusoid_peak_displacement(series: &TimeSeries) -> f64 {
    let n = series.len() as f64;
    let mean = series.values().iter().sum::<f64>() / n;
    let var = series
        .values()
        .iter()
        .map(|&x| (x - mean) * (x - mean))
        .sum::<f64>()
        / n;
    mean.abs() + (2.0 * var).sqrt()
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
