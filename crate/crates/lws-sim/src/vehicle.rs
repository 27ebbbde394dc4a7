//! Vehicle-pass generators.
//!
//! Straight passes put the vehicle on a line past a roadside sensor with a
//! fixed lateral offset `d`: at time `t` the along-road range is
//! `R = R0 - V t` and the line-of-sight distance `D = sqrt(R^2 + d^2)`.
//! Curved passes put it on an arc of radius `r` traversed at constant
//! angular speed, `beta = beta0 - omega t`, using the curved-geometry power
//! model. Both evaluate the channel power at each sample, convert to volts
//! with a unit-gain detector, and then apply the configured noise.

use lws_core::{ChannelParams, Photodetector, TimeSeries};
use serde::{Deserialize, Serialize};

use crate::{apply_noise, NoiseConfig, SimError};

/// A constant-velocity straight drive-by.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StraightPassConfig {
    /// Vehicle speed along the road in m/s.
    pub speed_mps: f64,
    /// Along-road range at the first sample, in metres.
    pub initial_range_m: f64,
    /// Perpendicular sensor-to-road distance in metres.
    pub lateral_offset_m: f64,
    /// Propagation channel between headlamp and detector.
    pub channel: ChannelParams,
    /// Run length in seconds; the last sample lands exactly here.
    pub duration_s: f64,
    /// Detector sampling rate in Hz.
    pub sample_rate_hz: f64,
    /// Measurement impairments.
    #[serde(default)]
    pub noise: NoiseConfig,
    /// Seed for every random draw in the run.
    pub seed: u64,
}

impl StraightPassConfig {
    /// Checks field ranges and that the vehicle stays on the near side of
    /// the sensor plane for the whole run.
    pub fn validate(&self) -> Result<(), SimError> {
        require_positive("speed_mps", self.speed_mps)?;
        require_positive("initial_range_m", self.initial_range_m)?;
        if !self.lateral_offset_m.is_finite() {
            return Err(SimError::NotFinite {
                field: "lateral_offset_m",
                value: self.lateral_offset_m,
            });
        }
        if self.lateral_offset_m < 0.0 {
            return Err(SimError::Negative {
                field: "lateral_offset_m",
                value: self.lateral_offset_m,
            });
        }
        validate_clock(self.duration_s, self.sample_rate_hz)?;
        self.noise.validate()?;
        let final_range = self.initial_range_m - self.speed_mps * self.duration_s;
        if final_range < 0.0 || (final_range == 0.0 && self.lateral_offset_m == 0.0) {
            return Err(SimError::SensorPlaneCrossed {
                final_range_m: final_range,
            });
        }
        Ok(())
    }

    /// Line-of-sight distance at elapsed time `t`.
    pub fn distance_at(&self, t_s: f64) -> f64 {
        let range = self.initial_range_m - self.speed_mps * t_s;
        (range * range + self.lateral_offset_m * self.lateral_offset_m).sqrt()
    }
}

/// A constant-angular-speed pass along a circular road segment.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvedPassConfig {
    /// Angular speed in rad/s.
    pub angular_speed_rad_s: f64,
    /// Subtended angle at the first sample, in radians.
    pub initial_beta_rad: f64,
    /// Curve radius in metres.
    pub radius_m: f64,
    /// Propagation channel between headlamp and detector.
    pub channel: ChannelParams,
    /// Run length in seconds.
    pub duration_s: f64,
    /// Detector sampling rate in Hz.
    pub sample_rate_hz: f64,
    /// Measurement impairments.
    #[serde(default)]
    pub noise: NoiseConfig,
    /// Seed for every random draw in the run.
    pub seed: u64,
}

impl CurvedPassConfig {
    /// Checks field ranges and that the angle schedule stays in (0, pi).
    pub fn validate(&self) -> Result<(), SimError> {
        require_positive("angular_speed_rad_s", self.angular_speed_rad_s)?;
        require_positive("radius_m", self.radius_m)?;
        if !(self.initial_beta_rad.is_finite()
            && self.initial_beta_rad > 0.0
            && self.initial_beta_rad < std::f64::consts::PI)
        {
            return Err(SimError::OutOfRange {
                field: "initial_beta_rad",
                range: "(0, pi)",
                value: self.initial_beta_rad,
            });
        }
        validate_clock(self.duration_s, self.sample_rate_hz)?;
        self.noise.validate()?;
        let final_beta = self.initial_beta_rad - self.angular_speed_rad_s * self.duration_s;
        if final_beta <= 0.0 {
            return Err(SimError::BetaLeavesRange {
                final_beta_rad: final_beta,
            });
        }
        Ok(())
    }

    /// Equivalent linear speed along the arc, `V = omega * r`.
    pub fn linear_speed_mps(&self) -> f64 {
        self.angular_speed_rad_s * self.radius_m
    }

    /// Subtended angle at elapsed time `t`.
    pub fn beta_at(&self, t_s: f64) -> f64 {
        self.initial_beta_rad - self.angular_speed_rad_s * t_s
    }
}

/// Simulates a straight pass into a detector voltage series.
pub fn simulate_straight_pass(cfg: &StraightPassConfig) -> Result<TimeSeries, SimError> {
    cfg.validate()?;
    let detector = Photodetector::unit_gain();
    let n = sample_count(cfg.duration_s, cfg.sample_rate_hz);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / cfg.sample_rate_hz;
        let power = cfg.channel.power_at(cfg.distance_at(t))?;
        values.push(detector.voltage(power)?);
    }
    let clean = TimeSeries::new(cfg.sample_rate_hz, 0.0, values)?;
    apply_noise(&clean, &cfg.noise, cfg.seed)
}

/// Simulates a curved pass into a detector voltage series.
pub fn simulate_curved_pass(cfg: &CurvedPassConfig) -> Result<TimeSeries, SimError> {
    cfg.validate()?;
    let detector = Photodetector::unit_gain();
    let n = sample_count(cfg.duration_s, cfg.sample_rate_hz);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / cfg.sample_rate_hz;
        let power = cfg.channel.curved_power(cfg.radius_m, cfg.beta_at(t))?;
        values.push(detector.voltage(power)?);
    }
    let clean = TimeSeries::new(cfg.sample_rate_hz, 0.0, values)?;
    apply_noise(&clean, &cfg.noise, cfg.seed)
}

/// Number of samples covering `[0, duration]` inclusive.
pub(crate) fn sample_count(duration_s: f64, sample_rate_hz: f64) -> usize {
    (duration_s * sample_rate_hz).round() as usize + 1
}

pub(crate) fn require_positive(field: &'static str, value: f64) -> Result<(), SimError> {
    if !value.is_finite() {
        return Err(SimError::NotFinite { field, value });
    }
    if value <= 0.0 {
        return Err(SimError::NotPositive { field, value });
    }
    Ok(())
}

pub(crate) fn validate_clock(duration_s: f64, sample_rate_hz: f64) -> Result<(), SimError> {
    require_positive("duration_s", duration_s)?;
    require_positive("sample_rate_hz", sample_rate_hz)?;
    if duration_s * sample_rate_hz < 1.0 {
        return Err(SimError::OutOfRange {
            field: "duration_s",
            range: "at least one sample interval",
            value: duration_s,
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
