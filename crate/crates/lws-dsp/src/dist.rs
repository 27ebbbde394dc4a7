//! Smoothed empirical distributions over a fixed bin grid, and the
//! Kullback-Leibler divergence between them.
//!
//! Samples are histogrammed onto caller-supplied edges with the two ends
//! clamped, so out-of-range values fall into the first or last bin instead
//! of being dropped. Additive smoothing keeps every bin strictly positive:
//!
//! ```text
//! pdf[i] = (count[i] + eps) / (n_samples + n_bins * eps)
//! ```
//!
//! which is what makes KL divergence finite when a query distribution has
//! mass where a reference distribution saw none.

use serde::{Deserialize, Serialize};

use crate::DspError;

/// A probability mass function over contiguous bins, with its CDF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalDistribution {
    bin_edges: Vec<f64>,
    pdf: Vec<f64>,
    cdf: Vec<f64>,
}

impl EmpiricalDistribution {
    /// Histograms `samples` onto `bin_edges` with additive smoothing.
    ///
    /// Edges must be finite and strictly increasing, with at least two
    /// entries; `smoothing_eps` must be finite and non-negative. Bin `i`
    /// covers `[edges[i], edges[i+1])`, except that samples below the first
    /// edge clamp into bin 0 and samples at or above the last edge clamp
    /// into the final bin.
    pub fn from_samples(
        samples: &[f64],
        bin_edges: &[f64],
        smoothing_eps: f64,
    ) -> Result<Self, DspError> {
        if samples.is_empty() {
            return Err(DspError::NoSamples);
        }
        if bin_edges.len() < 2
            || bin_edges.iter().any(|e| !e.is_finite())
            || bin_edges.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(DspError::BadBinEdges);
        }
        if !(smoothing_eps.is_finite() && smoothing_eps >= 0.0) {
            return Err(DspError::BadParameter {
                name: "smoothing_eps",
                value: smoothing_eps,
            });
        }
        for &s in samples {
            if !s.is_finite() {
                return Err(DspError::NotFinite {
                    name: "sample",
                    value: s,
                });
            }
        }

        let n_bins = bin_edges.len() - 1;
        let mut counts = vec![0u64; n_bins];
        for &s in samples {
            counts[bin_index(bin_edges, s)] += 1;
        }
        let total = samples.len() as f64 + n_bins as f64 * smoothing_eps;
        let pdf: Vec<f64> = counts
            .iter()
            .map(|&c| (c as f64 + smoothing_eps) / total)
            .collect();
        let mut cdf = Vec::with_capacity(n_bins);
        let mut acc = 0.0;
        for &p in &pdf {
            acc += p;
            cdf.push(acc);
        }
        Ok(Self {
            bin_edges: bin_edges.to_vec(),
            pdf,
            cdf,
        })
    }

    /// The bin edges this distribution was built on.
    pub fn bin_edges(&self) -> &[f64] {
        &self.bin_edges
    }

    /// Probability mass per bin.
    pub fn pdf(&self) -> &[f64] {
        &self.pdf
    }

    /// Cumulative mass up to and including each bin.
    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    /// Number of bins.
    pub fn n_bins(&self) -> usize {
        self.pdf.len()
    }
}

/// Index of the bin holding `value`, clamping below-range values into the
/// first bin and at-or-above-range values into the last.
fn bin_index(edges: &[f64], value: f64) -> usize {
    let n_bins = edges.len() - 1;
    if value < edges[0] {
        return 0;
    }
    if value >= edges[n_bins] {
        return n_bins - 1;
    }
    // Last edge strictly greater than value, so partition_point is in
    // 1..=n_bins and the subtraction cannot underflow.
    edges.partition_point(|&e| e <= value) - 1
}

/// Kullback-Leibler divergence `KL(p || q)` in nats.
///
/// Both distributions must share the same bin grid and have strictly
/// positive mass everywhere, which holds whenever they were built with a
/// positive smoothing epsilon. The result is non-negative and zero only
/// when the distributions match.
pub fn kl_divergence(
    p: &EmpiricalDistribution,
    q: &EmpiricalDistribution,
) -> Result<f64, DspError> {
    if p.bin_edges != q.bin_edges {
        return Err(DspError::BinEdgeMismatch);
    }
    if p.pdf.iter().chain(&q.pdf).any(|&v| v <= 0.0) {
        return Err(DspError::ZeroProbabilityBin);
    }
    Ok(p.pdf
        .iter()
        .zip(&q.pdf)
        .map(|(&pi, &qi)| pi * (pi / qi).ln())
        .sum())
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
