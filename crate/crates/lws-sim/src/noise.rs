//! Measurement impairments: ambient-light offset and additive white
//! Gaussian noise at a configured SNR.

use lws_core::TimeSeries;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::SimError;

/// Noise applied to an otherwise clean detector series.
///
/// `awgn_snr_db` is defined against the clean signal's power about its own
/// mean, so a 20 dB setting always leaves the fluctuating part of the
/// signal 100x stronger than the noise regardless of absolute scale.
/// `None` disables the Gaussian term entirely.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    /// Constant offset added to every sample, in volts (ambient light).
    pub ambient_dc_v: f64,
    /// Signal-to-noise ratio in dB for the additive Gaussian term, or
    /// `None` for a noise-free run.
    #[serde(default)]
    pub awgn_snr_db: Option<f64>,
}

impl NoiseConfig {
    /// No offset, no noise: the identity configuration.
    pub fn none() -> Self {
        Self {
            ambient_dc_v: 0.0,
            awgn_snr_db: None,
        }
    }

    /// Checks that the offset is finite and the SNR, when present, is too.
    pub fn validate(&self) -> Result<(), SimError> {
        if !self.ambient_dc_v.is_finite() {
            return Err(SimError::NotFinite {
                field: "ambient_dc_v",
                value: self.ambient_dc_v,
            });
        }
        if let Some(snr) = self.awgn_snr_db {
            if !snr.is_finite() {
                return Err(SimError::NotFinite {
                    field: "awgn_snr_db",
                    value: snr,
                });
            }
        }
        Ok(())
    }
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self::none()
    }
}

/// Applies `noise` to a clean series, deterministically in `seed`.
///
/// The Gaussian term has variance `var(clean) / 10^(snr/10)`, where
/// `var(clean)` is the population variance of the input. A constant input
/// therefore receives no noise even at a finite SNR: there is no signal
/// power to scale against. With a zero offset and no SNR the input is
/// returned bit-exact.
pub fn apply_noise(
    clean: &TimeSeries,
    noise: &NoiseConfig,
    seed: u64,
) -> Result<TimeSeries, SimError> {
    noise.validate()?;

    let sigma = match noise.awgn_snr_db {
        None => 0.0,
        Some(snr) => {
            let n = clean.len() as f64;
            let mean = clean.values().iter().sum::<f64>() / n;
            let var = clean
                .values()
                .iter()
                .map(|v| (v - mean) * (v - mean))
                .sum::<f64>()
                / n;
            (var / 10f64.powf(snr / 10.0)).sqrt()
        }
    };

    if noise.ambient_dc_v == 0.0 && sigma == 0.0 {
        return Ok(clean.clone());
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let values = clean
        .values()
        .iter()
        .map(|&v| {
            let gauss: f64 = if sigma > 0.0 {
                StandardNormal.sample(&mut rng)
            } else {
                0.0
            };
            v + noise.ambient_dc_v + sigma * gauss
        })
        .collect();
    Ok(clean.with_values(values)?)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
