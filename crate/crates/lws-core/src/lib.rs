//! Physical layer of the light-wave sensing (LWS) toolkit.
//!
//! An LED illuminates a scene; a photodetector watches the reflected or
//! direct beam and converts incident optical power into a voltage. Everything
//! downstream (vehicle speed, respiration rate, occupancy, displacement) is
//! inferred from how that power changes with geometry, so this crate pins
//! down the geometry-to-power model once:
//!
//! - [`LightSource`], [`Photodetector`], [`LinkGeometry`]: emitter, sensor
//!   and link descriptions with their validity ranges enforced.
//! - [`ChannelParams`]: the fitted path-loss pair (K, gamma) that estimators
//!   calibrate and invert.
//! - [`TimeSeries`]: the uniformly sampled voltage record every other crate
//!   exchanges.
//!
//! All operations are pure functions of their inputs. Angles are radians
//! everywhere; degrees may only appear at CLI boundaries. Power in dB means
//! `10 * log10(watts)` (dBW) throughout.

mod channel;
mod error;
mod optics;
mod series;

pub use channel::{db_from_watts, watts_from_db, ChannelParams, FAR_FIELD_THRESHOLD};
pub use error::CoreError;
pub use optics::{lambertian_order, LightSource, LinkGeometry, Photodetector};
pub use series::TimeSeries;
