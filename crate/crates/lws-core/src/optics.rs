//! Lambertian emitter, photodetector front end and link geometry.
//!
//! The emitter follows the generalized Lambertian radiation pattern: an LED
//! with half-power angle `phi_half` radiates with angular order
//!
//! ```text
//! n = -ln(2) / ln(cos(phi_half))
//! ```
//!
//! so that intensity falls to half its boresight value exactly at
//! `phi_half`. The power collected by a detector of area `A` at distance `D`,
//! irradiance angle `phi` and incidence angle `theta` is
//!
//! ```text
//! P_r = (n+1) * A * P_t / (2 * pi * D^gamma) * cos^n(phi) * cos(theta)
//! ```
//!
//! valid inside the field of view (`theta < phi_half`); outside it the
//! detector sees nothing and the model returns exactly zero. The front end
//! converts incident power to voltage through a responsivity and a
//! transimpedance stage with a dark-current floor:
//!
//! ```text
//! V_r = g_pd * (i_d + R_pd * P_r)
//! ```

use crate::error::CoreError;

use std::f64::consts::{FRAC_PI_2, PI};

/// Angular order of a Lambertian emitter with the given half-power angle.
///
/// Strictly decreasing in the angle: narrow beams have high order. The
/// formula is singular at 0 (ln 1 = 0) and meaningless at or beyond pi/2
/// (cos <= 0), so both ends are rejected.
pub fn lambertian_order(half_power_angle_rad: f64) -> Result<f64, CoreError> {
    if !half_power_angle_rad.is_finite() {
        return Err(CoreError::NotFinite {
            name: "half_power_angle_rad",
            value: half_power_angle_rad,
        });
    }
    if half_power_angle_rad <= 0.0 || half_power_angle_rad >= FRAC_PI_2 {
        return Err(CoreError::OutOfRange {
            name: "half_power_angle_rad",
            range: "(0, pi/2)",
            value: half_power_angle_rad,
        });
    }
    Ok(-(2.0_f64.ln()) / half_power_angle_rad.cos().ln())
}

/// LED emitter: transmit power plus the Lambertian beam shape.
///
/// The angular order is derived from the half-power angle at construction
/// and kept alongside it, so a `LightSource` is always self-consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightSource {
    transmit_power_w: f64,
    half_power_angle_rad: f64,
    lambertian_order: f64,
}

impl LightSource {
    /// Builds a source, deriving the Lambertian order from the angle.
    pub fn new(transmit_power_w: f64, half_power_angle_rad: f64) -> Result<Self, CoreError> {
        if !transmit_power_w.is_finite() || transmit_power_w <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "transmit_power_w",
                value: transmit_power_w,
            });
        }
        let order = lambertian_order(half_power_angle_rad)?;
        Ok(Self {
            transmit_power_w,
            half_power_angle_rad,
            lambertian_order: order,
        })
    }

    pub fn transmit_power_w(&self) -> f64 {
        self.transmit_power_w
    }

    pub fn half_power_angle_rad(&self) -> f64 {
        self.half_power_angle_rad
    }

    pub fn lambertian_order(&self) -> f64 {
        self.lambertian_order
    }

    /// Received optical power over the given link.
    ///
    /// Evaluates the Lambertian link budget above with path-loss exponent
    /// `gamma`. Returns exactly 0 W when the incidence angle reaches the
    /// half-power angle: the detector is outside the beam's field of view.
    pub fn received_power(
        &self,
        detector: &Photodetector,
        geom: &LinkGeometry,
        gamma: f64,
    ) -> Result<f64, CoreError> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "gamma",
                value: gamma,
            });
        }
        if geom.incidence_angle_rad >= self.half_power_angle_rad {
            return Ok(0.0);
        }
        let n = self.lambertian_order;
        let radial = (n + 1.0) * detector.area_m2() * self.transmit_power_w
            / (2.0 * PI * geom.distance_m.powf(gamma));
        Ok(radial * geom.irradiance_angle_rad.cos().powf(n) * geom.incidence_angle_rad.cos())
    }
}

/// Photodetector front end: optical aperture plus the current-to-voltage
/// conversion chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Photodetector {
    area_m2: f64,
    responsivity_a_per_w: f64,
    dark_current_a: f64,
    transimpedance_gain_v_per_a: f64,
}

impl Photodetector {
    pub fn new(
        area_m2: f64,
        responsivity_a_per_w: f64,
        dark_current_a: f64,
        transimpedance_gain_v_per_a: f64,
    ) -> Result<Self, CoreError> {
        if !area_m2.is_finite() || area_m2 <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "area_m2",
                value: area_m2,
            });
        }
        if !responsivity_a_per_w.is_finite() || responsivity_a_per_w < 0.0 {
            return Err(CoreError::Negative {
                name: "responsivity_a_per_w",
                value: responsivity_a_per_w,
            });
        }
        if !dark_current_a.is_finite() || dark_current_a < 0.0 {
            return Err(CoreError::Negative {
                name: "dark_current_a",
                value: dark_current_a,
            });
        }
        if !transimpedance_gain_v_per_a.is_finite() || transimpedance_gain_v_per_a <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "transimpedance_gain_v_per_a",
                value: transimpedance_gain_v_per_a,
            });
        }
        Ok(Self {
            area_m2,
            responsivity_a_per_w,
            dark_current_a,
            transimpedance_gain_v_per_a,
        })
    }

    /// Idealized detector used as the simulator default: 1 cm^2 aperture,
    /// 1 A/W responsivity, no dark current, 1 V/A gain. With it, voltage
    /// equals received power numerically, which keeps synthetic fixtures
    /// easy to reason about.
    pub fn unit_gain() -> Self {
        Self {
            area_m2: 1e-4,
            responsivity_a_per_w: 1.0,
            dark_current_a: 0.0,
            transimpedance_gain_v_per_a: 1.0,
        }
    }

    pub fn area_m2(&self) -> f64 {
        self.area_m2
    }

    pub fn responsivity_a_per_w(&self) -> f64 {
        self.responsivity_a_per_w
    }

    pub fn dark_current_a(&self) -> f64 {
        self.dark_current_a
    }

    pub fn transimpedance_gain_v_per_a(&self) -> f64 {
        self.transimpedance_gain_v_per_a
    }

    /// Output voltage for a given incident optical power.
    ///
    /// Affine and nondecreasing in the power; the floor at zero incident
    /// power is the amplified dark current `g_pd * i_d`.
    pub fn voltage(&self, received_power_w: f64) -> Result<f64, CoreError> {
        if !received_power_w.is_finite() || received_power_w < 0.0 {
            return Err(CoreError::Negative {
                name: "received_power_w",
                value: received_power_w,
            });
        }
        Ok(self.transimpedance_gain_v_per_a
            * (self.dark_current_a + self.responsivity_a_per_w * received_power_w))
    }

    /// Inverts [`voltage`](Self::voltage): the incident power that produces
    /// the given output voltage, with the dark-current offset subtracted.
    ///
    /// The result can be negative when the voltage sits below the dark
    /// floor (a noisy sample); callers decide whether to drop such samples.
    pub fn power_from_voltage(&self, voltage_v: f64) -> Result<f64, CoreError> {
        if !voltage_v.is_finite() {
            return Err(CoreError::NotFinite {
                name: "voltage_v",
                value: voltage_v,
            });
        }
        if self.responsivity_a_per_w == 0.0 {
            return Err(CoreError::NotPositive {
                name: "responsivity_a_per_w",
                value: 0.0,
            });
        }
        let current = voltage_v / self.transimpedance_gain_v_per_a - self.dark_current_a;
        Ok(current / self.responsivity_a_per_w)
    }
}

/// Source-to-detector link description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    distance_m: f64,
    irradiance_angle_rad: f64,
    incidence_angle_rad: f64,
    lateral_offset_m: f64,
}

impl LinkGeometry {
    /// Link at distance `D` with the given emission and arrival angles,
    /// both measured from boresight, and no lateral offset.
    pub fn new(
        distance_m: f64,
        irradiance_angle_rad: f64,
        incidence_angle_rad: f64,
    ) -> Result<Self, CoreError> {
        if !distance_m.is_finite() || distance_m <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "distance_m",
                value: distance_m,
            });
        }
        for (name, angle) in [
            ("irradiance_angle_rad", irradiance_angle_rad),
            ("incidence_angle_rad", incidence_angle_rad),
        ] {
            if !angle.is_finite() || !(0.0..=FRAC_PI_2).contains(&angle) {
                return Err(CoreError::OutOfRange {
                    name,
                    range: "[0, pi/2]",
                    value: angle,
                });
            }
        }
        Ok(Self {
            distance_m,
            irradiance_angle_rad,
            incidence_angle_rad,
            lateral_offset_m: 0.0,
        })
    }

    /// Head-on link: both angles zero. The vehicular scenarios use this
    /// form, where the geometry assumptions collapse all angle factors to 1.
    pub fn head_on(distance_m: f64) -> Result<Self, CoreError> {
        Self::new(distance_m, 0.0, 0.0)
    }

    /// Sets the perpendicular sensor-to-path distance used by the vehicular
    /// channel forms. Must stay below the link distance.
    pub fn with_lateral_offset(mut self, lateral_offset_m: f64) -> Result<Self, CoreError> {
        if !lateral_offset_m.is_finite() || lateral_offset_m < 0.0 {
            return Err(CoreError::Negative {
                name: "lateral_offset_m",
                value: lateral_offset_m,
            });
        }
        if lateral_offset_m > self.distance_m {
            return Err(CoreError::OffsetExceedsDistance {
                offset_m: lateral_offset_m,
                distance_m: self.distance_m,
            });
        }
        self.lateral_offset_m = lateral_offset_m;
        Ok(self)
    }

    pub fn distance_m(&self) -> f64 {
        self.distance_m
    }

    pub fn irradiance_angle_rad(&self) -> f64 {
        self.irradiance_angle_rad
    }

    pub fn incidence_angle_rad(&self) -> f64 {
        self.incidence_angle_rad
    }

    pub fn lateral_offset_m(&self) -> f64 {
        self.lateral_offset_m
    }
}
