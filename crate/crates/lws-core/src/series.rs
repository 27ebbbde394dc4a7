//! Uniformly sampled voltage record, the exchange type between the
//! simulator, the DSP chain and the estimators.

use crate::error::CoreError;

/// Uniformly sampled photodetector voltages.
///
/// Timestamps are implicit: sample `i` sits at `start_time_s + i / rate`.
/// Construction validates that the rate is positive and every sample is
/// finite, so downstream numeric code never has to re-check.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    sample_rate_hz: f64,
    start_time_s: f64,
    values_v: Vec<f64>,
}

impl TimeSeries {
    pub fn new(
        sample_rate_hz: f64,
        start_time_s: f64,
        values_v: Vec<f64>,
    ) -> Result<Self, CoreError> {
        if !sample_rate_hz.is_finite() || sample_rate_hz <= 0.0 {
            return Err(CoreError::NotPositive {
                name: "sample_rate_hz",
                value: sample_rate_hz,
            });
        }
        if !start_time_s.is_finite() {
            return Err(CoreError::NotFinite {
                name: "start_time_s",
                value: start_time_s,
            });
        }
        if values_v.is_empty() {
            return Err(CoreError::EmptySeries);
        }
        if let Some((index, &value)) = values_v
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite())
        {
            return Err(CoreError::NonFiniteSample { index, value });
        }
        Ok(Self {
            sample_rate_hz,
            start_time_s,
            values_v,
        })
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn start_time_s(&self) -> f64 {
        self.start_time_s
    }

    pub fn values(&self) -> &[f64] {
        &self.values_v
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values_v
    }

    pub fn len(&self) -> usize {
        self.values_v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values_v.is_empty()
    }

    /// Timestamp of sample `i`, computed directly (not cumulatively) so the
    /// value is identical no matter how the series is traversed.
    pub fn time_at(&self, index: usize) -> f64 {
        self.start_time_s + index as f64 / self.sample_rate_hz
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time_at(i))
    }

    /// Span from the first sample to the last, `(len - 1) / rate`.
    pub fn duration_s(&self) -> f64 {
        (self.len() - 1) as f64 / self.sample_rate_hz
    }

    /// Same clock, new sample values. Fails if lengths differ or a value is
    /// not finite; used by filters that transform values but keep time.
    pub fn with_values(&self, values_v: Vec<f64>) -> Result<Self, CoreError> {
        if values_v.len() != self.values_v.len() {
            return Err(CoreError::OutOfRange {
                name: "values_v.len()",
                range: "same length as source series",
                value: values_v.len() as f64,
            });
        }
        Self::new(self.sample_rate_hz, self.start_time_s, values_v)
    }
}
