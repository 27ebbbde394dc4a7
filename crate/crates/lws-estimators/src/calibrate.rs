//! Channel calibration from distance/power measurement pairs.
//!
//! The power law `P = K * D^-gamma` is linear in the dB domain:
//!
//! ```text
//! P_dB = K_dB - gamma * D_dB,    P_dB = 10 log10 P,  D_dB = 10 log10 D
//! ```
//!
//! so ordinary least squares on `(D_dB, P_dB)` recovers `K_dB` as the
//! intercept and `gamma` as the negated slope, exactly on noiseless
//! power-law data.

use lws_core::{watts_from_db, ChannelParams};
use serde::Serialize;

use crate::EstimatorError;

/// A fitted channel with its regression diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationFit {
    /// The recovered channel parameters.
    pub channel: ChannelParams,
    /// Coefficient of determination of the dB-domain line.
    pub r_squared: f64,
    /// Root-mean-square dB residual about the fitted line.
    pub residual_rms_db: f64,
    /// Number of measurement pairs used.
    pub n_points: usize,
    /// True when only two distinct distances were available: the line is
    /// exact through both but carries no redundancy.
    pub low_confidence: bool,
}

/// Fits `(K, gamma)` to measured `(distance, power)` pairs by least
/// squares in the dB domain.
///
/// Needs at least two distinct distances; with exactly two the fit is the
/// line through them, flagged `low_confidence`. `lambertian_order` is not
/// fitted (the power law does not constrain it); it is carried into the
/// returned [`ChannelParams`] for the models that need it.
pub fn calibrate_channel(
    distances_m: &[f64],
    powers_w: &[f64],
    lambertian_order: f64,
) -> Result<CalibrationFit, EstimatorError> {
    if distances_m.len() != powers_w.len() {
        return Err(EstimatorError::MismatchedLengths {
            left: distances_m.len(),
            right: powers_w.len(),
        });
    }
    if distances_m.len() < 2 {
        return Err(EstimatorError::TooFewUsable {
            needed: 2,
            usable: distances_m.len(),
        });
    }
    for (index, (&d, &p)) in distances_m.iter().zip(powers_w).enumerate() {
        if !(d.is_finite() && d > 0.0) {
            return Err(EstimatorError::InvalidSample {
                index,
                name: "distance_m",
                value: d,
            });
        }
        if !(p.is_finite() && p > 0.0) {
            return Err(EstimatorError::InvalidSample {
                index,
                name: "power_w",
                value: p,
            });
        }
    }

    let x: Vec<f64> = distances_m.iter().map(|d| 10.0 * d.log10()).collect();
    let y: Vec<f64> = powers_w.iter().map(|p| 10.0 * p.log10()).collect();
    let mut distinct: Vec<f64> = x.clone();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("log of positive is finite"));
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(EstimatorError::RankDeficient {
            n_points: distances_m.len(),
        });
    }

    let n = x.len() as f64;
    let x_mean = x.iter().sum::<f64>() / n;
    let y_mean = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (xi, yi) in x.iter().zip(&y) {
        sxy += (xi - x_mean) * (yi - y_mean);
        sxx += (xi - x_mean) * (xi - x_mean);
        syy += (yi - y_mean) * (yi - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;

    let gamma = -slope;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(EstimatorError::NonPhysicalFit { gamma });
    }

    let ss_res: f64 = x
        .iter()
        .zip(&y)
        .map(|(xi, yi)| {
            let r = yi - (intercept + slope * xi);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };

    let channel = ChannelParams::new(watts_from_db(intercept), gamma, lambertian_order)?;
    Ok(CalibrationFit {
        channel,
        r_squared,
        residual_rms_db: (ss_res / n).sqrt(),
        n_points: x.len(),
        low_confidence: distinct.len() == 2,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
