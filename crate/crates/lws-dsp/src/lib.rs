//! Signal-processing primitives for the light-wave sensing (LWS) toolkit.
//!
//! Everything in this crate is deterministic and allocation-explicit: the
//! same input always produces the bit-identical output, with no internal
//! randomness, threading, or wall-clock dependence. Estimation crates build
//! their pipelines out of these pieces:
//!
//! - [`fft_magnitude`]: radix-2 FFT of a mean-removed, zero-padded signal,
//!   reduced to a one-sided magnitude [`Spectrum`].
//! - [`smooth_power_triangular`]: triangular power-domain smoothing used to
//!   stabilise peak picking on noisy spectra.
//! - [`bandpass_fir`]: linear-phase windowed-sinc band-pass with group-delay
//!   compensation.
//! - [`detrend_linear`]: least-squares line removal.
//! - [`zscore`]: population-statistics standardisation with a degeneracy flag.
//! - [`EmpiricalDistribution`] / [`kl_divergence`]: smoothed histograms and
//!   the divergence between them, for fingerprint-matching estimators.
//! - [`spectral_peak`]: in-band argmax with a median-based prominence guard.

mod dist;
mod error;
mod fft;
mod filter;
mod peak;
mod stats;

pub use dist::{kl_divergence, EmpiricalDistribution};
pub use error::DspError;
pub use fft::{fft_magnitude, smooth_power_triangular, Spectrum};
pub use filter::{bandpass_fir, detrend_linear};
pub use peak::{spectral_peak, SpectralPeak};
pub use stats::{zscore, Standardized};
