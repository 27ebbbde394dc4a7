//! Z-score standardisation.

use crate::DspError;

/// Result of standardising a sample vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardized {
    /// Values shifted to zero mean and scaled to unit population variance.
    /// All zeros when the input is degenerate.
    pub values: Vec<f64>,
    /// True when the input had zero variance, in which case no scale exists
    /// and `values` is all zeros by convention.
    pub degenerate: bool,
}

/// Standardises `samples` to zero mean and unit variance.
///
/// Uses the population standard deviation (divide by n). A constant input
/// has no defined scale; it maps to all zeros with the `degenerate` flag set
/// so callers can branch instead of propagating NaNs.
pub fn zscore(samples: &[f64]) -> Result<Standardized, DspError> {
    if samples.is_empty() {
        return Err(DspError::NoSamples);
    }
    for &v in samples {
        if !v.is_finite() {
            return Err(DspError::NotFinite {
                name: "sample",
                value: v,
            });
        }
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    if std == 0.0 {
        return Ok(Standardized {
            values: vec![0.0; samples.len()],
            degenerate: true,
        });
    }
    Ok(Standardized {
        values: samples.iter().map(|v| (v - mean) / std).collect(),
        degenerate: false,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_hand_computed_three_point_case() {
        // mean 2, population std sqrt(2/3): z = (x - 2) / 0.8165.
        let z = zscore(&[1.0, 2.0, 3.0]).unwrap();
        assert!(!z.degenerate);
        let expected = [-1.224_744_871_391_589, 0.0, 1.224_744_871_391_589];
        for (i, (&got, want)) in z.values.iter().zip(expected).enumerate() {
            assert!(
                (got - want).abs() < 1e-12,
                "z[{i}] = {got}, expected {want}"
            );
        }
    }

    #[test]
    fn output_has_zero_mean_and_unit_variance() {
        let samples: Vec<f64> = (0..500).map(|i| (i as f64 * 0.7).sin() * 3.0 + 5.0).collect();
        let z = zscore(&samples).unwrap();
        let n = z.values.len() as f64;
        let mean = z.values.iter().sum::<f64>() / n;
        let var = z.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        assert!(mean.abs() < 1e-12, "mean {mean}");
        assert!((var - 1.0).abs() < 1e-12, "variance {var}");
    }

    #[test]
    fn constant_input_is_degenerate_zeros() {
        let z = zscore(&[4.2; 8]).unwrap();
        assert!(z.degenerate, "constant input must set the degeneracy flag");
        assert!(z.values.iter().all(|&v| v == 0.0), "values {:?}", z.values);
    }

    #[test]
    fn rejects_empty_and_non_finite_input() {
        assert!(matches!(zscore(&[]), Err(DspError::NoSamples)));
        assert!(matches!(
            zscore(&[1.0, f64::INFINITY]),
            Err(DspError::NotFinite { .. })
        ));
    }
}
