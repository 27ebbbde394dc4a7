//! Scenario dispatch: one tagged config type covering every generator, and
//! the ground-truth record that travels with a generated series for
//! scoring.

use lws_core::TimeSeries;
use serde::{Deserialize, Serialize};

use crate::{
    simulate_breathing, simulate_curved_pass, simulate_occupancy, simulate_straight_pass,
    BreathingClass, BreathingConfig, CurvedPassConfig, OccupancyConfig, SimError,
    StraightPassConfig,
};

/// Any simulatable scenario, discriminated by a `"kind"` field in JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioConfig {
    StraightPass(StraightPassConfig),
    CurvedPass(CurvedPassConfig),
    Breathing(BreathingConfig),
    Occupancy(OccupancyConfig),
}

impl ScenarioConfig {
    /// The `"kind"` discriminator value for this scenario.
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioConfig::StraightPass(_) => "straight_pass",
            ScenarioConfig::CurvedPass(_) => "curved_pass",
            ScenarioConfig::Breathing(_) => "breathing",
            ScenarioConfig::Occupancy(_) => "occupancy",
        }
    }

    /// The run seed.
    pub fn seed(&self) -> u64 {
        match self {
            ScenarioConfig::StraightPass(c) => c.seed,
            ScenarioConfig::CurvedPass(c) => c.seed,
            ScenarioConfig::Breathing(c) => c.seed,
            ScenarioConfig::Occupancy(c) => c.seed,
        }
    }

    /// Validates the inner config.
    pub fn validate(&self) -> Result<(), SimError> {
        match self {
            ScenarioConfig::StraightPass(c) => c.validate(),
            ScenarioConfig::CurvedPass(c) => c.validate(),
            ScenarioConfig::Breathing(c) => c.validate(),
            ScenarioConfig::Occupancy(c) => c.validate(),
        }
    }

    /// Runs the matching generator.
    pub fn simulate(&self) -> Result<TimeSeries, SimError> {
        match self {
            ScenarioConfig::StraightPass(c) => simulate_straight_pass(c),
            ScenarioConfig::CurvedPass(c) => simulate_curved_pass(c),
            ScenarioConfig::Breathing(c) => simulate_breathing(c),
            ScenarioConfig::Occupancy(c) => simulate_occupancy(c),
        }
    }

    /// The parameters an estimator is later scored against.
    pub fn ground_truth(&self) -> GroundTruth {
        match self {
            ScenarioConfig::StraightPass(c) => GroundTruth::StraightPass {
                speed_mps: c.speed_mps,
                initial_range_m: c.initial_range_m,
                lateral_offset_m: c.lateral_offset_m,
            },
            ScenarioConfig::CurvedPass(c) => GroundTruth::CurvedPass {
                angular_speed_rad_s: c.angular_speed_rad_s,
                initial_beta_rad: c.initial_beta_rad,
                radius_m: c.radius_m,
                linear_speed_mps: c.linear_speed_mps(),
            },
            ScenarioConfig::Breathing(c) => GroundTruth::Breathing {
                class_label: c.class_label,
                rate_bpm: c.rate_bpm,
                depth: c.depth,
            },
            ScenarioConfig::Occupancy(c) => GroundTruth::Occupancy {
                occupant_count: c.occupant_count,
                crossing_prob_per_slot: c.crossing_prob_per_slot,
                blockage_attenuation: c.blockage_attenuation,
                baseline_power_w: c.baseline_power_w,
            },
        }
    }
}

/// What the simulator knew that an estimator must recover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroundTruth {
    StraightPass {
        speed_mps: f64,
        initial_range_m: f64,
        lateral_offset_m: f64,
    },
    CurvedPass {
        angular_speed_rad_s: f64,
        initial_beta_rad: f64,
        radius_m: f64,
        /// Linear speed along the arc, `V = omega * r`.
        linear_speed_mps: f64,
    },
    Breathing {
        class_label: BreathingClass,
        rate_bpm: f64,
        depth: f64,
    },
    Occupancy {
        occupant_count: u32,
        crossing_prob_per_slot: f64,
        blockage_attenuation: f64,
        baseline_power_w: f64,
    },
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
