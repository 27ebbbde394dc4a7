//! Breathing-subject generator.
//!
//! The chest is modelled as a raised sinusoid riding on a fixed baseline
//! distance: at breathing rate `f` and relative depth `depth`,
//!
//! ```text
//! x(t) = depth * A0 * (1 - cos(2 pi f tau)) / 2,    A0 = 5 mm
//! ```
//!
//! where `tau` is accumulated breathing time. For most classes `tau = t`;
//! apnea alternates breathing segments (whole breath cycles, so each ends
//! fully exhaled at x = 0 with zero slope) with pauses of at least ten
//! seconds during which `tau` freezes. The detector sees
//! `D(t) = baseline - x(t)`: inhaling moves the chest closer and brightens
//! the received signal.
//!
//! The `faulty` class produces sensor pathologies instead of a subject:
//! a flatlined output, a saturated (clipped) output, or aperiodic noise,
//! chosen from the run seed. None of them contains a periodic component.

use lws_core::{ChannelParams, Photodetector, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::vehicle::{require_positive, sample_count, validate_clock};
use crate::{apply_noise, NoiseConfig, SimError};

/// Chest excursion in metres at depth 1.0.
pub const CHEST_EXCURSION_M: f64 = 0.005;

/// Shortest apnea run that always fits one breathing segment plus one full
/// pause.
pub const APNEA_MIN_DURATION_S: f64 = 30.0;

/// The eight breathing classes, including the sensor-fault class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreathingClass {
    Eupnea,
    Apnea,
    Tachypnea,
    Bradypnea,
    Hyperpnea,
    Hypopnea,
    Kussmaul,
    Faulty,
}

impl BreathingClass {
    /// All classes in a stable order.
    pub const ALL: [BreathingClass; 8] = [
        BreathingClass::Eupnea,
        BreathingClass::Apnea,
        BreathingClass::Tachypnea,
        BreathingClass::Bradypnea,
        BreathingClass::Hyperpnea,
        BreathingClass::Hypopnea,
        BreathingClass::Kussmaul,
        BreathingClass::Faulty,
    ];

    /// Admissible breathing rate in breaths per minute, or `None` for the
    /// fault class where the field is ignored.
    pub fn rate_range_bpm(&self) -> Option<(f64, f64)> {
        match self {
            BreathingClass::Eupnea | BreathingClass::Hyperpnea => Some((12.0, 20.0)),
            // Apnea breathes normally between pauses.
            BreathingClass::Apnea => Some((12.0, 20.0)),
            BreathingClass::Bradypnea => Some((6.0, 11.0)),
            BreathingClass::Tachypnea => Some((21.0, 40.0)),
            BreathingClass::Hypopnea => Some((9.0, 15.0)),
            BreathingClass::Kussmaul => Some((21.0, 35.0)),
            BreathingClass::Faulty => None,
        }
    }

    /// Admissible relative depth, or `None` for the fault class.
    pub fn depth_range(&self) -> Option<(f64, f64)> {
        match self {
            BreathingClass::Eupnea
            | BreathingClass::Apnea
            | BreathingClass::Bradypnea
            | BreathingClass::Tachypnea => Some((1.0, 1.0)),
            BreathingClass::Hyperpnea => Some((1.5, 2.0)),
            BreathingClass::Hypopnea => Some((0.3, 0.5)),
            BreathingClass::Kussmaul => Some((1.8, 2.2)),
            BreathingClass::Faulty => None,
        }
    }

    /// The lowercase label used in files and on the command line.
    pub fn label(&self) -> &'static str {
        match self {
            BreathingClass::Eupnea => "eupnea",
            BreathingClass::Apnea => "apnea",
            BreathingClass::Tachypnea => "tachypnea",
            BreathingClass::Bradypnea => "bradypnea",
            BreathingClass::Hyperpnea => "hyperpnea",
            BreathingClass::Hypopnea => "hypopnea",
            BreathingClass::Kussmaul => "kussmaul",
            BreathingClass::Faulty => "faulty",
        }
    }
}

impl std::fmt::Display for BreathingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for BreathingClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BreathingClass::ALL
            .iter()
            .find(|c| c.label() == s)
            .copied()
            .ok_or_else(|| format!("unknown breathing class \"{s}\""))
    }
}

/// A breathing-subject run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BreathingConfig {
    /// Breathing pattern to generate.
    pub class_label: BreathingClass,
    /// Breathing rate in breaths per minute; must sit inside the class
    /// range. Ignored for `faulty`.
    pub rate_bpm: f64,
    /// Relative chest-displacement amplitude (1.0 = normal); must sit
    /// inside the class range. Ignored for `faulty`.
    pub depth: f64,
    /// Chest-to-sensor distance at full exhale, in metres.
    pub baseline_distance_m: f64,
    /// Propagation channel between source and detector.
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

impl BreathingConfig {
    /// Draws a config for `class` with rate and depth sampled uniformly
    /// from the class table, using `seed` for both the draw and the run.
    pub fn sample_for_class(
        class: BreathingClass,
        baseline_distance_m: f64,
        channel: ChannelParams,
        duration_s: f64,
        sample_rate_hz: f64,
        noise: NoiseConfig,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let draw = |rng: &mut ChaCha12Rng, range: Option<(f64, f64)>| match range {
            Some((lo, hi)) if lo < hi => rng.gen_range(lo..=hi),
            Some((lo, _)) => lo,
            None => 0.0,
        };
        let rate_bpm = draw(&mut rng, class.rate_range_bpm());
        let depth = draw(&mut rng, class.depth_range());
        Self {
            class_label: class,
            rate_bpm,
            depth,
            baseline_distance_m,
            channel,
            duration_s,
            sample_rate_hz,
            noise,
            seed,
        }
    }

    /// Checks field ranges and the class parameter table.
    pub fn validate(&self) -> Result<(), SimError> {
        require_positive("baseline_distance_m", self.baseline_distance_m)?;
        validate_clock(self.duration_s, self.sample_rate_hz)?;
        self.noise.validate()?;
        for (field, value) in [("rate_bpm", self.rate_bpm), ("depth", self.depth)] {
            if !value.is_finite() {
                return Err(SimError::NotFinite { field, value });
            }
            if value < 0.0 {
                return Err(SimError::Negative { field, value });
            }
        }
        if let Some((lo, hi)) = self.class_label.rate_range_bpm() {
            if self.rate_bpm < lo || self.rate_bpm > hi {
                return Err(SimError::ClassParameterMismatch {
                    class: self.class_label.label(),
                    field: "rate_bpm",
                    range: rate_range_name(self.class_label),
                    value: self.rate_bpm,
                });
            }
        }
        if let Some((lo, hi)) = self.class_label.depth_range() {
            if self.depth < lo || self.depth > hi {
                return Err(SimError::ClassParameterMismatch {
                    class: self.class_label.label(),
                    field: "depth",
                    range: depth_range_name(self.class_label),
                    value: self.depth,
                });
            }
        }
        if self.class_label != BreathingClass::Faulty
            && self.depth * CHEST_EXCURSION_M >= self.baseline_distance_m
        {
            return Err(SimError::ExcursionReachesSensor {
                excursion_m: CHEST_EXCURSION_M,
                baseline_m: self.baseline_distance_m,
            });
        }
        if self.class_label == BreathingClass::Apnea && self.duration_s < APNEA_MIN_DURATION_S {
            return Err(SimError::ApneaTooShort {
                duration_s: self.duration_s,
                minimum_s: APNEA_MIN_DURATION_S,
            });
        }
        Ok(())
    }
}

fn rate_range_name(class: BreathingClass) -> &'static str {
    match class.rate_range_bpm() {
        Some((12.0, 20.0)) => "[12, 20] bpm",
        Some((6.0, 11.0)) => "[6, 11] bpm",
        Some((21.0, 40.0)) => "[21, 40] bpm",
        Some((9.0, 15.0)) => "[9, 15] bpm",
        Some((21.0, 35.0)) => "[21, 35] bpm",
        _ => "unrestricted",
    }
}

fn depth_range_name(class: BreathingClass) -> &'static str {
    match class.depth_range() {
        Some((1.0, 1.0)) => "[1, 1]",
        Some((1.5, 2.0)) => "[1.5, 2]",
        Some((0.3, 0.5)) => "[0.3, 0.5]",
        Some((1.8, 2.2)) => "[1.8, 2.2]",
        _ => "unrestricted",
    }
}

/// Simulates a breathing subject (or sensor fault) into a voltage series.
pub fn simulate_breathing(cfg: &BreathingConfig) -> Result<TimeSeries, SimError> {
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let clean = match cfg.class_label {
        BreathingClass::Faulty => faulty_series(cfg, &mut rng)?,
        BreathingClass::Apnea => breathing_series(cfg, &apnea_pauses(cfg, &mut rng))?,
        _ => breathing_series(cfg, &[])?,
    };
    let noise_seed = rng.gen::<u64>();
    apply_noise(&clean, &cfg.noise, noise_seed)
}

/// Displacement of the chest from full exhale after `tau` seconds of
/// accumulated breathing.
fn displacement(depth: f64, rate_bpm: f64, tau: f64) -> f64 {
    let f = rate_bpm / 60.0;
    depth * CHEST_EXCURSION_M * (1.0 - (2.0 * std::f64::consts::PI * f * tau).cos()) / 2.0
}

/// Pause windows `(start_s, end_s)` for an apnea run.
///
/// Breathing segments last 8 to 15 seconds rounded to whole breath cycles
/// (so every segment ends fully exhaled) and pauses last 10 to 15 seconds.
fn apnea_pauses(cfg: &BreathingConfig, rng: &mut ChaCha12Rng) -> Vec<(f64, f64)> {
    let f = cfg.rate_bpm / 60.0;
    let mut pauses = Vec::new();
    let mut t = 0.0;
    while t < cfg.duration_s {
        let wanted: f64 = rng.gen_range(8.0..=15.0);
        let breaths = (wanted * f).round().max(1.0);
        t += breaths / f;
        if t >= cfg.duration_s {
            break;
        }
        let pause: f64 = rng.gen_range(10.0..=15.0);
        pauses.push((t, t + pause));
        t += pause;
    }
    pauses
}

/// Evaluates the chest model with breathing time frozen inside `pauses`.
fn breathing_series(cfg: &BreathingConfig, pauses: &[(f64, f64)]) -> Result<TimeSeries, SimError> {
    let detector = Photodetector::unit_gain();
    let n = sample_count(cfg.duration_s, cfg.sample_rate_hz);
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / cfg.sample_rate_hz;
        // Accumulated breathing time: wall time minus completed pause time.
        // Inside a pause tau freezes at the segment boundary, where the
        // displacement is exactly zero.
        let mut tau = t;
        let mut paused = false;
        for &(start, end) in pauses {
            if t >= end {
                tau -= end - start;
            } else if t >= start {
                paused = true;
                break;
            }
        }
        let x = if paused {
            0.0
        } else {
            displacement(cfg.depth, cfg.rate_bpm, tau)
        };
        let power = cfg.channel.power_at(cfg.baseline_distance_m - x)?;
        values.push(detector.voltage(power)?);
    }
    Ok(TimeSeries::new(cfg.sample_rate_hz, 0.0, values)?)
}

/// One of three aperiodic sensor faults, chosen from the run RNG.
fn faulty_series(cfg: &BreathingConfig, rng: &mut ChaCha12Rng) -> Result<TimeSeries, SimError> {
    let detector = Photodetector::unit_gain();
    let n = sample_count(cfg.duration_s, cfg.sample_rate_hz);
    let baseline_v = detector.voltage(cfg.channel.power_at(cfg.baseline_distance_m)?)?;
    // Noise scale matched to the voltage swing of a depth-1.0 breath, so a
    // noisy fault is not trivially separable by amplitude alone.
    let inhaled_v =
        detector.voltage(cfg.channel.power_at(cfg.baseline_distance_m - CHEST_EXCURSION_M)?)?;
    let swing = inhaled_v - baseline_v;
    let values = match rng.gen_range(0u8..3) {
        0 => vec![baseline_v; n],       // flatline
        1 => vec![5.0 * baseline_v; n], // saturated rail
        _ => (0..n)
            .map(|_| baseline_v + swing * rng.gen_range(-1.0..1.0))
            .collect(),
    };
    Ok(TimeSeries::new(cfg.sample_rate_hz, 0.0, values)?)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
