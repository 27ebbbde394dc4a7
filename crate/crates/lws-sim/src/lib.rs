//! Forward simulator for the light-wave sensing (LWS) toolkit.
//!
//! Each generator turns a validated scenario config into the photodetector
//! voltage series a sensor would record, using the physical models from
//! `lws-core` and a unit-gain detector, then applies configurable noise.
//! Generators are pure functions of `(config, seed)`: the same inputs give
//! a bit-identical series on every run, and batches may execute in
//! parallel because nothing is shared.
//!
//! Scenarios:
//! - [`simulate_straight_pass`]: constant-velocity drive-by past a
//!   roadside sensor.
//! - [`simulate_curved_pass`]: constant angular speed along a curved road
//!   segment.
//! - [`simulate_breathing`]: a breathing subject (eight classes, including
//!   sensor faults).
//! - [`simulate_occupancy`]: slot-wise line-of-sight blockage by a group
//!   of occupants.
//!
//! [`ScenarioConfig`] bundles the four config types behind a `"kind"`
//! discriminator for JSON artifacts, and [`GroundTruth`] records what an
//! estimator must later recover. Series persist via [`write_series_csv`] /
//! [`read_series_csv`].

mod breathing;
mod error;
mod io;
mod noise;
mod occupancy;
mod scenario;
mod vehicle;

pub use breathing::{
    simulate_breathing, BreathingClass, BreathingConfig, APNEA_MIN_DURATION_S, CHEST_EXCURSION_M,
};
pub use error::SimError;
pub use io::{read_series_csv, write_series_csv, SERIES_CSV_HEADER};
pub use noise::{apply_noise, NoiseConfig};
pub use occupancy::{simulate_occupancy, OccupancyConfig};
pub use scenario::{GroundTruth, ScenarioConfig};
pub use vehicle::{
    simulate_curved_pass, simulate_straight_pass, CurvedPassConfig, StraightPassConfig,
};
