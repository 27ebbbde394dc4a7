//! Vehicle speed estimation from received-power series.
//!
//! All three estimators first invert the detector model (subtracting dark
//! current) and the power law to get per-sample geometry, then differ in
//! how they reduce it:
//!
//! - [`estimate_speed_instantaneous`]: pairwise differenced ranges. Simple
//!   and noise-sensitive; kept as the baseline the regression methods are
//!   compared against.
//! - [`estimate_speed_ls`]: transforms each sample to the along-road range
//!   `y_i = sqrt(D_i^2 - d^2)`, which a constant-velocity pass makes an
//!   exact line `y = -V t + R0`, then fits it by least squares.
//! - [`estimate_speed_curved`]: solves the curved-geometry power model for
//!   the subtended angle `beta_i` per sample (bisection on a monotone
//!   curve), fits `beta = beta0 - omega t`, and reports `V = omega * r`.
//!
//! Samples that fail preconditions (nonpositive implied power, distance
//! inside the lateral offset, power outside the curved model's attainable
//! range) are dropped and counted, never silently imputed.

use lws_core::{ChannelParams, Photodetector, TimeSeries};
use serde::Serialize;

use crate::EstimatorError;

/// Result of the straight-road least-squares fit.
#[derive(Debug, Clone, Serialize)]
pub struct SpeedEstimate {
    /// Estimated speed in m/s (positive = approaching).
    pub speed_mps: f64,
    /// Estimated along-road range at t = 0, in metres.
    pub initial_range_m: f64,
    /// RMS residual of the range fit, in metres.
    pub residual_rms: f64,
    /// Samples that survived the transform and entered the fit.
    pub n_samples_used: usize,
    /// Samples dropped for failing preconditions.
    pub samples_dropped: usize,
}

impl SpeedEstimate {
    /// True when the fit says the vehicle is not approaching; either it is
    /// genuinely receding or the fit failed to find the pass.
    pub fn is_receding(&self) -> bool {
        self.speed_mps <= 0.0
    }
}

/// Result of the curved-road fit.
#[derive(Debug, Clone, Serialize)]
pub struct CurvedSpeedEstimate {
    /// Estimated angular speed in rad/s.
    pub angular_speed_rad_s: f64,
    /// Estimated subtended angle at t = 0, in radians.
    pub initial_beta_rad: f64,
    /// Linear speed along the arc: exactly `angular_speed_rad_s * radius`.
    pub linear_speed_mps: f64,
    /// RMS residual of the angle fit, in radians.
    pub residual_rms: f64,
    /// Samples whose angle was solvable and entered the fit.
    pub n_samples_used: usize,
    /// Samples dropped for failing preconditions.
    pub samples_dropped: usize,
}

/// Per-pair speeds from differenced ranges.
#[derive(Debug, Clone, Serialize)]
pub struct InstantaneousSpeeds {
    /// `(mid-pair time, speed)` for each consecutive pair of usable
    /// samples, in seconds and m/s.
    pub samples: Vec<(f64, f64)>,
    /// Samples dropped before pairing.
    pub samples_dropped: usize,
}

impl InstantaneousSpeeds {
    /// Mean of the pairwise speeds: the headline single-number estimate of
    /// this method.
    pub fn mean_speed(&self) -> Option<f64> {
        if self.samples.is_empty() {
            return None;
        }
        Some(self.samples.iter().map(|(_, v)| v).sum::<f64>() / self.samples.len() as f64)
    }

    /// Population variance of the pairwise speeds.
    pub fn speed_variance(&self) -> Option<f64> {
        let mean = self.mean_speed()?;
        let n = self.samples.len() as f64;
        Some(
            self.samples
                .iter()
                .map(|(_, v)| (v - mean) * (v - mean))
                .sum::<f64>()
                / n,
        )
    }
}

/// Converts each voltage sample to an along-road range, dropping samples
/// whose implied power or geometry is unusable.
fn usable_ranges(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    lateral_offset_m: f64,
) -> Result<(Vec<(f64, f64)>, usize), EstimatorError> {
    if !(lateral_offset_m.is_finite() && lateral_offset_m >= 0.0) {
        return Err(EstimatorError::BadParameter {
            name: "lateral_offset_m",
            requirement: "finite and non-negative",
            value: lateral_offset_m,
        });
    }
    let mut kept = Vec::with_capacity(series.len());
    let mut dropped = 0usize;
    for (t, &v) in series.times().zip(series.values()) {
        let power = detector.power_from_voltage(v)?;
        if power <= 0.0 {
            dropped += 1;
            continue;
        }
        let distance = channel.distance_from_power(power)?;
        let range_sq = distance * distance - lateral_offset_m * lateral_offset_m;
        if range_sq <= 0.0 {
            dropped += 1;
            continue;
        }
        kept.push((t, range_sq.sqrt()));
    }
    Ok((kept, dropped))
}

/// Differences consecutive usable ranges into per-pair speeds.
///
/// Documented as the noise-sensitive baseline: each pair divides by one
/// sample interval, so voltage noise is amplified by the sample rate.
pub fn estimate_speed_instantaneous(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    lateral_offset_m: f64,
) -> Result<InstantaneousSpeeds, EstimatorError> {
    let (kept, samples_dropped) = usable_ranges(series, channel, detector, lateral_offset_m)?;
    if kept.len() < 2 {
        return Err(EstimatorError::TooFewUsable {
            needed: 2,
            usable: kept.len(),
        });
    }
    let samples = kept
        .windows(2)
        .map(|w| {
            let (t0, r0) = w[0];
            let (t1, r1) = w[1];
            (0.5 * (t0 + t1), (r0 - r1) / (t1 - t0))
        })
        .collect();
    Ok(InstantaneousSpeeds {
        samples,
        samples_dropped,
    })
}

/// Fits the along-road range line `y = -V t + R0` by least squares.
pub fn estimate_speed_ls(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    lateral_offset_m: f64,
) -> Result<SpeedEstimate, EstimatorError> {
    let (kept, samples_dropped) = usable_ranges(series, channel, detector, lateral_offset_m)?;
    if kept.len() < 3 {
        return Err(EstimatorError::TooFewUsable {
            needed: 3,
            usable: kept.len(),
        });
    }
    let (slope, intercept, residual_rms) = line_fit(&kept);
    Ok(SpeedEstimate {
        speed_mps: -slope,
        initial_range_m: intercept,
        residual_rms,
        n_samples_used: kept.len(),
        samples_dropped,
    })
}

/// Solves the curved model per sample and fits `beta = beta0 - omega t`.
pub fn estimate_speed_curved(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    radius_m: f64,
) -> Result<CurvedSpeedEstimate, EstimatorError> {
    if !(radius_m.is_finite() && radius_m > 0.0) {
        return Err(EstimatorError::BadParameter {
            name: "radius_m",
            requirement: "finite and positive",
            value: radius_m,
        });
    }
    let mut kept = Vec::with_capacity(series.len());
    let mut samples_dropped = 0usize;
    for (t, &v) in series.times().zip(series.values()) {
        let power = detector.power_from_voltage(v)?;
        if power <= 0.0 {
            samples_dropped += 1;
            continue;
        }
        match beta_from_curved_power(channel, radius_m, power) {
            Some(beta) => kept.push((t, beta)),
            None => samples_dropped += 1,
        }
    }
    if kept.len() < 3 {
        return Err(EstimatorError::TooFewUsable {
            needed: 3,
            usable: kept.len(),
        });
    }
    let (slope, intercept, residual_rms) = line_fit(&kept);
    let angular_speed_rad_s = -slope;
    Ok(CurvedSpeedEstimate {
        angular_speed_rad_s,
        initial_beta_rad: intercept,
        linear_speed_mps: angular_speed_rad_s * radius_m,
        residual_rms,
        n_samples_used: kept.len(),
        samples_dropped,
    })
}

/// Smallest angle the bisection will consider; guards the model's
/// singularities at 0 and pi.
const BETA_MIN_RAD: f64 = 1e-4;

/// Bisection tolerance on the angle, in radians.
const BETA_TOL_RAD: f64 = 1e-10;

/// Inverts the curved power model for one sample.
///
/// The model is strictly decreasing in the angle, so a plain bisection on
/// `(BETA_MIN, pi - BETA_MIN)` converges unconditionally. Powers outside
/// the attainable range on that interval return `None`. This is the same
/// inversion `estimate_speed_curved` applies per sample, exposed so callers
/// can audit individual residuals.
pub fn beta_from_curved_power(
    channel: &ChannelParams,
    radius_m: f64,
    power_w: f64,
) -> Option<f64> {
    let p_at = |beta: f64| {
        channel
            .curved_power(radius_m, beta)
            .expect("bisection keeps beta inside (0, pi)")
    };
    let mut lo = BETA_MIN_RAD;
    let mut hi = std::f64::consts::PI - BETA_MIN_RAD;
    if power_w > p_at(lo) || power_w < p_at(hi) {
        return None;
    }
    while hi - lo > BETA_TOL_RAD {
        let mid = 0.5 * (lo + hi);
        if p_at(mid) >= power_w {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Closed-form least squares for `y = slope * t + intercept`, returning
/// `(slope, intercept, rms residual)`.
fn line_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let t_mean = points.iter().map(|(t, _)| t).sum::<f64>() / n;
    let y_mean = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut stt = 0.0;
    let mut sty = 0.0;
    for &(t, y) in points {
        stt += (t - t_mean) * (t - t_mean);
        sty += (t - t_mean) * (y - y_mean);
    }
    let slope = sty / stt;
    let intercept = y_mean - slope * t_mean;
    let ss_res: f64 = points
        .iter()
        .map(|&(t, y)| {
            let r = y - (intercept + slope * t);
            r * r
        })
        .sum();
    (slope, intercept, (ss_res / n).sqrt())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn channel() -> ChannelParams {
        ChannelParams::new(1e-4, 2.0, 1.0).unwrap()
    }

    fn detector() -> Photodetector {
        Photodetector::unit_gain()
    }

    /// Voltage series for a constant-velocity pass with the unit-gain
    /// detector (voltage equals power numerically).
    fn pass_series(v: f64, r0: f64, d: f64, duration: f64, rate: f64) -> TimeSeries {
        let ch = channel();
        let n = (duration * rate) as usize + 1;
        let values = (0..n)
            .map(|i| {
                let t = i as f64 / rate;
                let r = r0 - v * t;
                ch.power_at((r * r + d * d).sqrt()).unwrap()
            })
            .collect();
        TimeSeries::new(rate, 0.0, values).unwrap()
    }

    #[test]
    fn ls_recovers_the_textbook_pass_exactly() {
        let series = pass_series(20.0, 100.0, 5.0, 4.0, 100.0);
        let est = estimate_speed_ls(&series, &channel(), &detector(), 5.0).unwrap();
        assert!(
            (est.speed_mps - 20.0).abs() < 1e-6 * 20.0,
            "speed {}",
            est.speed_mps
        );
        assert!(
            (est.initial_range_m - 100.0).abs() < 1e-6 * 100.0,
            "range {}",
            est.initial_range_m
        );
        assert!(est.residual_rms < 1e-6);
        assert_eq!(est.samples_dropped, 0);
        assert_eq!(est.n_samples_used, 401);
        assert!(!est.is_receding());
    }

    #[test]
    fn zero_offset_reduces_the_transform_to_plain_distance() {
        let series = pass_series(15.0, 80.0, 0.0, 3.0, 100.0);
        let est = estimate_speed_ls(&series, &channel(), &detector(), 0.0).unwrap();
        assert!((est.speed_mps - 15.0).abs() < 1e-6 * 15.0);
        assert!((est.initial_range_m - 80.0).abs() < 1e-6 * 80.0);
    }

    #[test]
    fn ls_is_invariant_to_joint_power_and_k_scaling() {
        let series = pass_series(20.0, 100.0, 5.0, 4.0, 100.0);
        let scaled_values: Vec<f64> = series.values().iter().map(|v| v * 3.7).collect();
        let scaled_series = series.with_values(scaled_values).unwrap();
        let scaled_channel = ChannelParams::new(3.7e-4, 2.0, 1.0).unwrap();
        let a = estimate_speed_ls(&series, &channel(), &detector(), 5.0).unwrap();
        let b = estimate_speed_ls(&scaled_series, &scaled_channel, &detector(), 5.0).unwrap();
        assert!(
            (a.speed_mps - b.speed_mps).abs() < 1e-9,
            "scaling changed the estimate: {} vs {}",
            a.speed_mps,
            b.speed_mps
        );
        assert!((a.initial_range_m - b.initial_range_m).abs() < 1e-9);
    }

    #[test]
    fn instantaneous_pairs_all_equal_the_true_speed_when_noiseless() {
        let series = pass_series(20.0, 100.0, 5.0, 4.0, 100.0);
        let inst =
            estimate_speed_instantaneous(&series, &channel(), &detector(), 5.0).unwrap();
        assert_eq!(inst.samples.len(), 400);
        for &(t, v) in &inst.samples {
            assert!(
                (v - 20.0).abs() < 1e-6 * 20.0,
                "pair at t={t}: speed {v}"
            );
        }
        assert!((inst.mean_speed().unwrap() - 20.0).abs() < 1e-6 * 20.0);
    }

    #[test]
    fn stationary_target_gives_zero_speeds() {
        let ch = channel();
        let p = ch.power_at(30.0).unwrap();
        let series = TimeSeries::new(100.0, 0.0, vec![p; 50]).unwrap();
        let inst = estimate_speed_instantaneous(&series, &ch, &detector(), 0.0).unwrap();
        assert!(inst.samples.iter().all(|&(_, v)| v == 0.0));
        let ls = estimate_speed_ls(&series, &ch, &detector(), 0.0).unwrap();
        assert!(ls.speed_mps.abs() < 1e-9);
        assert!(ls.is_receding(), "zero speed must be flagged");
    }

    #[test]
    fn samples_inside_the_lateral_offset_are_dropped_and_counted() {
        let ch = channel();
        // Distances 10 and 3 with offset 5: the 3 m sample cannot have a
        // real along-road range.
        let values = vec![
            ch.power_at(10.0).unwrap(),
            ch.power_at(3.0).unwrap(),
            ch.power_at(9.0).unwrap(),
            ch.power_at(8.5).unwrap(),
        ];
        let series = TimeSeries::new(10.0, 0.0, values).unwrap();
        let est = estimate_speed_ls(&series, &ch, &detector(), 5.0).unwrap();
        assert_eq!(est.samples_dropped, 1);
        assert_eq!(est.n_samples_used, 3);
    }

    #[test]
    fn too_few_usable_samples_is_an_error_not_a_guess() {
        let ch = channel();
        let values = vec![ch.power_at(3.0).unwrap(); 10];
        let series = TimeSeries::new(10.0, 0.0, values).unwrap();
        let err = estimate_speed_ls(&series, &ch, &detector(), 5.0).unwrap_err();
        assert!(matches!(
            err,
            EstimatorError::TooFewUsable { needed: 3, usable: 0 }
        ));
        assert_eq!(err.reason_code(), "too_few_usable_samples");
    }

    fn curved_series(omega: f64, beta0: f64, r: f64, duration: f64, rate: f64) -> TimeSeries {
        let ch = channel();
        let n = (duration * rate) as usize + 1;
        let values = (0..n)
            .map(|i| {
                let t = i as f64 / rate;
                ch.curved_power(r, beta0 - omega * t).unwrap()
            })
            .collect();
        TimeSeries::new(rate, 0.0, values).unwrap()
    }

    #[test]
    fn curved_fit_recovers_omega_and_the_linear_speed() {
        let series = curved_series(0.05, 1.0, 100.0, 10.0, 100.0);
        let est = estimate_speed_curved(&series, &channel(), &detector(), 100.0).unwrap();
        assert!(
            (est.angular_speed_rad_s - 0.05).abs() < 1e-6 * 0.05,
            "omega {}",
            est.angular_speed_rad_s
        );
        assert!((est.initial_beta_rad - 1.0).abs() < 1e-6);
        assert!((est.linear_speed_mps - 5.0).abs() < 1e-6 * 5.0);
        assert_eq!(
            est.linear_speed_mps.to_bits(),
            (est.angular_speed_rad_s * 100.0).to_bits(),
            "linear speed must be exactly omega * r"
        );
        assert_eq!(est.samples_dropped, 0);
    }

    #[test]
    fn bisection_residual_meets_the_solver_contract() {
        let ch = channel();
        let series = curved_series(0.05, 1.0, 100.0, 10.0, 10.0);
        for &p in series.values() {
            let beta = beta_from_curved_power(&ch, 100.0, p).expect("in-range power must solve");
            let back = ch.curved_power(100.0, beta).unwrap();
            assert!(
                (back - p).abs() / p < 1e-8,
                "solver residual {} at power {p}",
                (back - p).abs() / p
            );
        }
    }

    #[test]
    fn constant_power_yields_zero_angular_speed() {
        let ch = channel();
        let p = ch.curved_power(100.0, 0.8).unwrap();
        let series = TimeSeries::new(10.0, 0.0, vec![p; 100]).unwrap();
        let est = estimate_speed_curved(&series, &ch, &detector(), 100.0).unwrap();
        assert!(
            est.angular_speed_rad_s.abs() < 1e-8,
            "omega {}",
            est.angular_speed_rad_s
        );
    }

    #[test]
    fn unattainable_powers_are_dropped() {
        let ch = channel();
        let p_max = ch.curved_power(100.0, BETA_MIN_RAD).unwrap();
        let ok = ch.curved_power(100.0, 1.0).unwrap();
        let values = vec![p_max * 2.0, ok, ok * 1.0001, ok * 1.0002, ok * 1.0003];
        let series = TimeSeries::new(10.0, 0.0, values).unwrap();
        let est = estimate_speed_curved(&series, &ch, &detector(), 100.0).unwrap();
        assert_eq!(est.samples_dropped, 1);
        assert_eq!(est.n_samples_used, 4);
    }

    #[test]
    fn dark_current_is_subtracted_before_inversion() {
        // A detector with gain 2, dark current 1 uA and responsivity 0.5:
        // v = 2 * (1e-6 + 0.5 p). The estimator must undo all of it.
        let det = Photodetector::new(1e-4, 0.5, 1e-6, 2.0).unwrap();
        let ch = channel();
        let n = 301;
        let values: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / 100.0;
                let r: f64 = 60.0 - 12.0 * t;
                let p = ch.power_at((r * r + 9.0).sqrt()).unwrap();
                det.voltage(p).unwrap()
            })
            .collect();
        let series = TimeSeries::new(100.0, 0.0, values).unwrap();
        let est = estimate_speed_ls(&series, &ch, &det, 3.0).unwrap();
        assert!(
            (est.speed_mps - 12.0).abs() < 1e-6 * 12.0,
            "speed {}",
            est.speed_mps
        );
    }
}
