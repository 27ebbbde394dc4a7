//! Linear-phase FIR band-pass filtering and least-squares detrending.
//!
//! The band-pass kernel is a Hamming-windowed difference of two sinc
//! low-pass prototypes:
//!
//! ```text
//! h[k] = (sinc_lp(f_hi)[k] - sinc_lp(f_lo)[k]) * (0.54 - 0.46 cos(2 pi k / (N-1)))
//! sinc_lp(fc)[k] = 2 fc                     at the centre tap
//!               = sin(2 pi fc x) / (pi x)   elsewhere, x = k - (N-1)/2
//! ```
//!
//! with frequencies normalised by the sample rate. An odd tap count makes
//! the group delay an integer number of samples, which the convolution
//! compensates so the output stays aligned with the input clock. Samples
//! beyond either end of the series are treated as zero, so roughly half a
//! kernel length at each edge carries a start-up transient.

use lws_core::TimeSeries;

use crate::DspError;

/// Band-pass filters `series` with an `n_taps`-tap windowed-sinc kernel.
///
/// Requires `0 < low_hz < high_hz < rate/2`, an odd `n_taps >= 3`, and a
/// series strictly longer than the kernel. The output has the same length,
/// rate, and start time as the input.
pub fn bandpass_fir(
    series: &TimeSeries,
    low_hz: f64,
    high_hz: f64,
    n_taps: usize,
) -> Result<TimeSeries, DspError> {
    if n_taps < 3 || n_taps % 2 == 0 {
        return Err(DspError::BadTapCount { n_taps });
    }
    if series.len() <= n_taps {
        return Err(DspError::TooShort {
            needed: n_taps + 1,
            got: series.len(),
        });
    }
    let nyquist = series.sample_rate_hz() / 2.0;
    if !(low_hz.is_finite() && high_hz.is_finite() && low_hz > 0.0 && low_hz < high_hz && high_hz < nyquist)
    {
        return Err(DspError::BadBand {
            low_hz,
            high_hz,
            nyquist_hz: nyquist,
        });
    }

    let taps = bandpass_taps(
        low_hz / series.sample_rate_hz(),
        high_hz / series.sample_rate_hz(),
        n_taps,
    );
    let x = series.values();
    let n = x.len();
    let delay = (n_taps - 1) / 2;
    let mut filtered = Vec::with_capacity(n);
    for i in 0..n {
        // Output sample i of the delay-compensated convolution reads input
        // samples i + delay - k; out-of-range reads contribute zero.
        let mut acc = 0.0;
        for (k, &tap) in taps.iter().enumerate() {
            let src = i + delay;
            if src >= k && src - k < n {
                acc += tap * x[src - k];
            }
        }
        filtered.push(acc);
    }
    Ok(series.with_values(filtered)?)
}

/// Windowed-sinc band-pass taps for band-edge frequencies normalised by the
/// sample rate.
fn bandpass_taps(low_norm: f64, high_norm: f64, n_taps: usize) -> Vec<f64> {
    let m = (n_taps - 1) as f64;
    let mid = (n_taps - 1) / 2;
    let sinc_lp = |fc: f64, x: f64| {
        if x == 0.0 {
            2.0 * fc
        } else {
            (2.0 * std::f64::consts::PI * fc * x).sin() / (std::f64::consts::PI * x)
        }
    };
    (0..n_taps)
        .map(|k| {
            let x = k as f64 - mid as f64;
            let window = 0.54 - 0.46 * (2.0 * std::f64::consts::PI * k as f64 / m).cos();
            (sinc_lp(high_norm, x) - sinc_lp(low_norm, x)) * window
        })
        .collect()
}

/// Removes the least-squares line from `series`.
///
/// The fit uses the actual sample timestamps (centred for conditioning), so
/// the result is invariant to the series start time. The output sums to
/// approximately zero and has no residual linear drift.
pub fn detrend_linear(series: &TimeSeries) -> Result<TimeSeries, DspError> {
    let n = series.len();
    if n < 2 {
        return Err(DspError::TooShort { needed: 2, got: n });
    }
    let y = series.values();
    let t_mean = series.times().sum::<f64>() / n as f64;
    let y_mean = y.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (t, &v) in series.times().zip(y) {
        let tc = t - t_mean;
        num += tc * (v - y_mean);
        den += tc * tc;
    }
    let slope = num / den;
    let detrended = series
        .times()
        .zip(y)
        .map(|(t, &v)| v - (y_mean + slope * (t - t_mean)))
        .collect();
    Ok(series.with_values(detrended)?)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
