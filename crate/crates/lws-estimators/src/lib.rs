//! Estimators that invert the optical channel models from measured
//! voltage series.
//!
//! Every public entry point here consumes in-memory [`lws_core`] types and
//! returns plain result structs; file formats and CLI concerns live
//! elsewhere. The estimators:
//!
//! - [`calibrate_channel`]: fits path-loss parameters from paired
//!   distance/power measurements.
//! - [`estimate_speed_ls`], [`estimate_speed_instantaneous`],
//!   [`estimate_speed_curved`]: vehicle speed from a drive-by power trace,
//!   on straight and curved roads.
//! - [`estimate_rate`] (with respiration and heart-band wrappers): spectral
//!   rate readout for slow periodic motion.
//! - [`estimate_displacement`] and [`sinusoid_peak_displacement`]:
//!   chest-motion depth from the same traces.
//! - [`build_occupancy_db`] and [`estimate_occupancy`]: occupant counting
//!   by KL matching of voltage histograms.
//!
//! Failures are typed ([`EstimatorError`]) and each carries a stable
//! machine-readable [`reason code`](EstimatorError::reason_code).

mod calibrate;
mod displacement;
mod error;
mod occupancy;
mod speed;
mod vitals;

pub use calibrate::{calibrate_channel, CalibrationFit};
pub use displacement::{estimate_displacement, sinusoid_peak_displacement, DisplacementEstimate};
pub use error::EstimatorError;
pub use occupancy::{
    build_occupancy_db, estimate_occupancy, OccupancyDatabase, OccupancyEstimate,
    DB_SMOOTHING_EPS, MIN_CONFIDENT_SLOTS,
};
pub use speed::{
    beta_from_curved_power, estimate_speed_curved, estimate_speed_instantaneous, estimate_speed_ls,
    CurvedSpeedEstimate, InstantaneousSpeeds, SpeedEstimate,
};
pub use vitals::{
    estimate_heart_rate, estimate_rate, estimate_respiration_rate, RateEstimate, BANDPASS_TAPS,
    HEART_BAND_HZ, RESPIRATION_BAND_HZ, SMOOTHING_HALF_WIDTH_HZ, SPECTRUM_PAD_FACTOR,
};
