//! Occupancy-scene generator.
//!
//! Time is divided into slots. In each slot every one of the `N` occupants
//! independently crosses the line of sight with probability `p`, so the
//! number of blockers is Binomial(N, p) and the received power is
//!
//! ```text
//! P_slot = baseline_power_w * a^k,    k ~ Binomial(N, p)
//! ```
//!
//! with one output sample per slot. Different occupant counts produce
//! different power histograms, which is what the fingerprint-matching
//! estimator exploits.

use lws_core::{Photodetector, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::vehicle::require_positive;
use crate::{apply_noise, NoiseConfig, SimError};

/// An occupancy monitoring run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OccupancyConfig {
    /// Number of occupants in the scene.
    pub occupant_count: u32,
    /// Probability that a given occupant blocks the line of sight during a
    /// slot.
    pub crossing_prob_per_slot: f64,
    /// Multiplicative power attenuation per blocking occupant, in [0, 1).
    pub blockage_attenuation: f64,
    /// Slot length in seconds (one output sample per slot).
    pub slot_duration_s: f64,
    /// Number of slots to generate.
    pub n_slots: u32,
    /// Received power with nobody blocking, in watts.
    pub baseline_power_w: f64,
    /// Measurement impairments.
    #[serde(default)]
    pub noise: NoiseConfig,
    /// Seed for every random draw in the run.
    pub seed: u64,
}

impl OccupancyConfig {
    /// Checks field ranges.
    pub fn validate(&self) -> Result<(), SimError> {
        if !(self.crossing_prob_per_slot.is_finite()
            && (0.0..=1.0).contains(&self.crossing_prob_per_slot))
        {
            return Err(SimError::OutOfRange {
                field: "crossing_prob_per_slot",
                range: "[0, 1]",
                value: self.crossing_prob_per_slot,
            });
        }
        if !(self.blockage_attenuation.is_finite()
            && (0.0..1.0).contains(&self.blockage_attenuation))
        {
            return Err(SimError::OutOfRange {
                field: "blockage_attenuation",
                range: "[0, 1)",
                value: self.blockage_attenuation,
            });
        }
        require_positive("slot_duration_s", self.slot_duration_s)?;
        require_positive("baseline_power_w", self.baseline_power_w)?;
        if self.n_slots == 0 {
            return Err(SimError::NotPositive {
                field: "n_slots",
                value: 0.0,
            });
        }
        self.noise.validate()
    }

    /// Probability that a slot stays at full baseline power (zero
    /// blockers): `(1 - p)^N`.
    pub fn baseline_slot_probability(&self) -> f64 {
        (1.0 - self.crossing_prob_per_slot).powi(self.occupant_count as i32)
    }
}

/// Simulates an occupancy run, one voltage sample per slot.
pub fn simulate_occupancy(cfg: &OccupancyConfig) -> Result<TimeSeries, SimError> {
    cfg.validate()?;
    let detector = Photodetector::unit_gain();
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let binomial = Binomial::new(
        u64::from(cfg.occupant_count),
        cfg.crossing_prob_per_slot,
    )
    .expect("probability validated to [0, 1]");
    let mut values = Vec::with_capacity(cfg.n_slots as usize);
    for _ in 0..cfg.n_slots {
        let blockers = binomial.sample(&mut rng);
        let power = cfg.baseline_power_w * cfg.blockage_attenuation.powi(blockers as i32);
        values.push(detector.voltage(power)?);
    }
    let clean = TimeSeries::new(1.0 / cfg.slot_duration_s, 0.0, values)?;
    let noise_seed = rng.gen::<u64>();
    apply_noise(&clean, &cfg.noise, noise_seed)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
