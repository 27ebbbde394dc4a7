//! Radix-2 FFT and one-sided magnitude spectra.
//!
//! [`fft_magnitude`] removes the signal mean, zero-pads to a power-of-two
//! length, runs an in-place decimation-in-time FFT, and keeps the moduli of
//! the non-redundant half of the transform. Magnitudes are raw DFT moduli
//! with no window or 1/N scaling, so for an even transform length N the
//! energy identity holds exactly (up to rounding):
//!
//! ```text
//! sum_t (x_t - mean)^2  =  (|X_0|^2 + 2 * sum_{k=1}^{N/2-1} |X_k|^2 + |X_{N/2}|^2) / N
//! ```
//!
//! Zero padding refines the frequency grid without adding information; the
//! rate estimators pad to eight times the signal length so the grid spacing
//! stays well under their reporting tolerance.

use serde::{Deserialize, Serialize};

use lws_core::TimeSeries;

use crate::DspError;

/// One-sided magnitude spectrum of a real signal.
///
/// Bin `k` is centred at `k * freq_resolution_hz`; the last bin sits at the
/// Nyquist frequency of the originating series.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spectrum {
    freq_resolution_hz: f64,
    magnitudes: Vec<f64>,
}

impl Spectrum {
    /// Builds a spectrum from a bin spacing and per-bin magnitudes.
    ///
    /// This is mostly useful for tests and for deserialised artifacts;
    /// analysis code obtains spectra from [`fft_magnitude`].
    pub fn new(freq_resolution_hz: f64, magnitudes: Vec<f64>) -> Result<Self, DspError> {
        if !(freq_resolution_hz.is_finite() && freq_resolution_hz > 0.0) {
            return Err(DspError::BadParameter {
                name: "freq_resolution_hz",
                value: freq_resolution_hz,
            });
        }
        if magnitudes.is_empty() {
            return Err(DspError::TooShort { needed: 1, got: 0 });
        }
        for &m in &magnitudes {
            if !(m.is_finite() && m >= 0.0) {
                return Err(DspError::NotFinite {
                    name: "magnitude",
                    value: m,
                });
            }
        }
        Ok(Self {
            freq_resolution_hz,
            magnitudes,
        })
    }

    /// Spacing between adjacent bins in hertz.
    pub fn freq_resolution_hz(&self) -> f64 {
        self.freq_resolution_hz
    }

    /// Magnitudes for bins `0..=N/2` of the underlying transform.
    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    /// Number of bins.
    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    /// True when the spectrum holds no bins (never produced by this crate).
    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    /// Centre frequency of bin `k`.
    pub fn freq_at(&self, bin: usize) -> f64 {
        bin as f64 * self.freq_resolution_hz
    }

    /// Centre frequency of the highest bin.
    pub fn max_freq_hz(&self) -> f64 {
        self.freq_at(self.magnitudes.len().saturating_sub(1))
    }
}

/// Computes the one-sided magnitude spectrum of `series`.
///
/// The sample mean is subtracted first, so bin 0 reflects residual rounding
/// rather than the DC offset. `fft_len` must be a power of two at least as
/// long as the series; `None` picks the next power of two.
pub fn fft_magnitude(series: &TimeSeries, fft_len: Option<usize>) -> Result<Spectrum, DspError> {
    let n = series.len();
    if n < 2 {
        return Err(DspError::TooShort { needed: 2, got: n });
    }
    let nfft = fft_len.unwrap_or_else(|| n.next_power_of_two());
    if !nfft.is_power_of_two() || nfft < n {
        return Err(DspError::BadFftLength {
            requested: nfft,
            len: n,
        });
    }

    let values = series.values();
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut re = vec![0.0; nfft];
    let mut im = vec![0.0; nfft];
    for (dst, &v) in re.iter_mut().zip(values) {
        *dst = v - mean;
    }
    fft_in_place(&mut re, &mut im);

    let magnitudes = (0..=nfft / 2)
        .map(|k| (re[k] * re[k] + im[k] * im[k]).sqrt())
        .collect();
    Ok(Spectrum {
        freq_resolution_hz: series.sample_rate_hz() / nfft as f64,
        magnitudes,
    })
}

/// Smooths a spectrum by a triangular moving average applied to bin powers.
///
/// The window spans `ceil(half_width_hz / resolution)` bins on each side with
/// weights falling linearly from the centre; near the edges the window
/// shrinks and the weights renormalise, so a flat spectrum passes through
/// unchanged. Averaging powers rather than magnitudes keeps the noise-floor
/// statistics additive, which is what the median prominence guard assumes.
pub fn smooth_power_triangular(
    spectrum: &Spectrum,
    half_width_hz: f64,
) -> Result<Spectrum, DspError> {
    if !(half_width_hz.is_finite() && half_width_hz >= 0.0) {
        return Err(DspError::BadParameter {
            name: "half_width_hz",
            value: half_width_hz,
        });
    }
    let hw = (half_width_hz / spectrum.freq_resolution_hz).ceil() as usize;
    if hw == 0 {
        return Ok(spectrum.clone());
    }

    let power: Vec<f64> = spectrum.magnitudes.iter().map(|m| m * m).collect();
    let n = power.len();
    let weight = |offset: isize| 1.0 - offset.unsigned_abs() as f64 / (hw as f64 + 1.0);
    let mut smoothed = Vec::with_capacity(n);
    for i in 0..n as isize {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in -(hw as isize)..=hw as isize {
            let k = i + j;
            if k < 0 || k >= n as isize {
                continue;
            }
            let w = weight(j);
            num += w * power[k as usize];
            den += w;
        }
        smoothed.push((num / den).sqrt());
    }
    Ok(Spectrum {
        freq_resolution_hz: spectrum.freq_resolution_hz,
        magnitudes: smoothed,
    })
}

/// In-place iterative radix-2 decimation-in-time FFT.
///
/// Twiddle factors are evaluated directly per butterfly instead of by
/// recurrence; the extra trig calls keep rounding error near the oracle
/// tolerance of the test suite for every transform size used here.
fn fft_in_place(re: &mut [f64], im: &mut [f64]) {
    let n = re.len();
    debug_assert!(n.is_power_of_two());

    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
    }

    let mut len = 2;
    while len <= n {
        let step = -2.0 * std::f64::consts::PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let angle = step * k as f64;
                let (w_im, w_re) = angle.sin_cos();
                let a = start + k;
                let b = a + len / 2;
                let t_re = re[b] * w_re - im[b] * w_im;
                let t_im = re[b] * w_im + im[b] * w_re;
                re[b] = re[a] - t_re;
                im[b] = im[a] - t_im;
                re[a] += t_re;
                im[a] += t_im;
            }
        }
        len <<= 1;
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
