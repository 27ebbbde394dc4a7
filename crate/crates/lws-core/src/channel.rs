//! Path-loss channel: the (K, gamma) power law and its vehicular variants.
//!
//! Head-on links collapse the full Lambertian budget to
//!
//! ```text
//! P_r = K * D^(-gamma),    K = (n+1) * A * P_t / (2 * pi)
//! ```
//!
//! which is the form estimators calibrate against measurements and invert
//! for distance. Two geometry refinements reuse the same constants: a
//! conditional dB model for a vehicle passing a roadside sensor at lateral
//! offset `d`, and a curved-road model parameterized by the subtended
//! angle `beta`.

use crate::error::CoreError;
use crate::optics::LightSource;

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Power in dBW for a linear power in watts.
pub fn db_from_watts(power_w: f64) -> f64 {
    10.0 * power_w.log10()
}

/// Linear power in watts for a power in dBW.
pub fn watts_from_db(power_dbw: f64) -> f64 {
    10.0_f64.powf(power_dbw / 10.0)
}

/// Default cutoff on d^2/D^2 below which the far-field branch of
/// [`ChannelParams::conditional_power_db`] applies. At 1% the branch error
/// stays below 0.05 dB for Lambertian orders up to 3.
pub const FAR_FIELD_THRESHOLD: f64 = 0.01;

/// Fitted path-loss parameters: the constant `K` (watts * m^gamma), the
/// decay exponent `gamma` and the Lambertian order `n` of the source the
/// fit belongs to.
///
/// Serializes as the calibration artifact `{"k_db", "gamma", "n"}` with
/// `k_db = 10 * log10(K)`; a `schema_version` field is written alongside
/// and ignored on read if absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChannelParamsRepr", into = "ChannelParamsRepr")]
pub struct ChannelParams {
    k_lin: f64,
    gamma: f64,
    lambertian_order: f64,
}

impl ChannelParams {
    pub fn new(k_lin: f64, gamma: f64, lambertian_order: f64) -> Result<Self, CoreError> {
        if !k_lin.is_finite() || k_lin <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "k_lin",
                value: k_lin,
            });
        }
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "gamma",
                value: gamma,
            });
        }
        if !lambertian_order.is_finite() || lambertian_order <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "lambertian_order",
                value: lambertian_order,
            });
        }
        Ok(Self {
            k_lin,
            gamma,
            lambertian_order,
        })
    }

    /// Channel constant implied by a source and detector aperture:
    /// `K = (n+1) * A * P_t / (2 pi)`. Head-on evaluation of the full
    /// Lambertian budget then agrees with [`power_at`](Self::power_at).
    pub fn from_source(
        source: &LightSource,
        detector_area_m2: f64,
        gamma: f64,
    ) -> Result<Self, CoreError> {
        if !detector_area_m2.is_finite() || detector_area_m2 <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "detector_area_m2",
                value: detector_area_m2,
            });
        }
        let n = source.lambertian_order();
        let k = (n + 1.0) * detector_area_m2 * source.transmit_power_w() / (2.0 * PI);
        Self::new(k, gamma, n)
    }

    pub fn k_lin(&self) -> f64 {
        self.k_lin
    }

    /// Channel constant in dB: `10 * log10 K`.
    pub fn k_db(&self) -> f64 {
        db_from_watts(self.k_lin)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambertian_order(&self) -> f64 {
        self.lambertian_order
    }

    /// Received power `K * D^(-gamma)` at the given distance.
    pub fn power_at(&self, distance_m: f64) -> Result<f64, CoreError> {
        if !distance_m.is_finite() || distance_m <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "distance_m",
                value: distance_m,
            });
        }
        Ok(self.k_lin * distance_m.powf(-self.gamma))
    }

    /// Distance `(P_r / K)^(-1/gamma)` implied by a received power; the
    /// exact inverse of [`power_at`](Self::power_at).
    pub fn distance_from_power(&self, power_w: f64) -> Result<f64, CoreError> {
        if !power_w.is_finite() || power_w <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "power_w",
                value: power_w,
            });
        }
        Ok((power_w / self.k_lin).powf(-1.0 / self.gamma))
    }

    /// Received power in dBW for a vehicle at range `D` passing a sensor at
    /// lateral offset `d`, with an explicit near/far branch.
    ///
    /// Far branch (`d^2/D^2 < far_threshold`): `K_dB - gamma * D_dB`. Near
    /// branch: the same plus the geometric gain
    /// `G_dB = 5 * (n+1) * log10(1 - d^2/D^2)`, which vanishes as the offset
    /// becomes negligible and diverges to -inf as `d` approaches `D`.
    pub fn conditional_power_db(
        &self,
        distance_m: f64,
        lateral_offset_m: f64,
        far_threshold: f64,
    ) -> Result<f64, CoreError> {
        if !distance_m.is_finite() || distance_m <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "distance_m",
                value: distance_m,
            });
        }
        if !lateral_offset_m.is_finite() || lateral_offset_m < 0.0 {
            return Err(CoreError::Negative {
                name: "lateral_offset_m",
                value: lateral_offset_m,
            });
        }
        if !far_threshold.is_finite() || far_threshold <= 0.0 || far_threshold >= 1.0 {
            return Err(CoreError::OutOfRange {
                name: "far_threshold",
                range: "(0, 1)",
                value: far_threshold,
            });
        }
        if lateral_offset_m >= distance_m {
            return Err(CoreError::OffsetExceedsDistance {
                offset_m: lateral_offset_m,
                distance_m,
            });
        }
        let ratio = (lateral_offset_m / distance_m).powi(2);
        let far = self.k_db() - self.gamma * 10.0 * distance_m.log10();
        if ratio < far_threshold {
            Ok(far)
        } else {
            let gain_db = 5.0 * (self.lambertian_order + 1.0) * (1.0 - ratio).log10();
            Ok(far + gain_db)
        }
    }

    /// Received power on a curved road of radius `r` where the vehicle
    /// subtends angle `beta` at the sensor:
    ///
    /// ```text
    /// P_r = K * cos^(n+1)(beta/2) / (2 r sin(beta/2))^gamma
    /// ```
    ///
    /// Strictly decreasing in `beta` on (0, pi), which is what makes the
    /// per-sample inversion in the estimators well posed. `beta = 0` is a
    /// genuine singularity and is rejected, never evaluated.
    pub fn curved_power(&self, radius_m: f64, beta_rad: f64) -> Result<f64, CoreError> {
        if !radius_m.is_finite() || radius_m <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "radius_m",
                value: radius_m,
            });
        }
        if !beta_rad.is_finite() || beta_rad <= 0.0 || beta_rad >= PI {
            return Err(CoreError::OutOfRange {
                name: "beta_rad",
                range: "(0, pi)",
                value: beta_rad,
            });
        }
        let half = beta_rad / 2.0;
        let numer = half.cos().powf(self.lambertian_order + 1.0);
        let denom = (2.0 * radius_m * half.sin()).powf(self.gamma);
        Ok(self.k_lin * numer / denom)
    }
}

#[derive(Serialize, Deserialize)]
struct ChannelParamsRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema_version: Option<String>,
    k_db: f64,
    gamma: f64,
    n: f64,
}

impl From<ChannelParams> for ChannelParamsRepr {
    fn from(ch: ChannelParams) -> Self {
        Self {
            schema_version: Some("1".to_owned()),
            k_db: ch.k_db(),
            gamma: ch.gamma,
            n: ch.lambertian_order,
        }
    }
}

impl TryFrom<ChannelParamsRepr> for ChannelParams {
    type Error = CoreError;

    fn try_from(repr: ChannelParamsRepr) -> Result<Self, Self::Error> {
        if !repr.k_db.is_finite() {
            return Err(CoreError::NotFinite {
                name: "k_db",
                value: repr.k_db,
            });
        }
        ChannelParams::new(watts_from_db(repr.k_db), repr.gamma, repr.n)
    }
}
