//! `lws calibrate`: fit path-loss parameters from a distance/power CSV and
//! write them as a channel JSON artifact.

use std::path::{Path, PathBuf};

use lws_estimators::{calibrate_channel, CalibrationFit};

use crate::artifacts::write_json;
use crate::error::CliError;

/// Header required on calibration input CSVs.
pub const CALIBRATION_CSV_HEADER: &str = "d_m,p_w";

/// Fewest measurement rows `calibrate` accepts. The fitter itself can work
/// from two, but a command-line calibration with no redundancy at all is
/// almost certainly a mistake.
pub const MIN_CALIBRATION_ROWS: usize = 3;

/// What a calibration run produced.
#[derive(Debug)]
pub struct CalibrateOutcome {
    pub out_path: PathBuf,
    pub fit: CalibrationFit,
    pub summary: String,
}

/// Reads `d_m,p_w` pairs, fits the channel, and writes channel JSON.
pub fn run(
    in_path: &Path,
    out_path: &Path,
    lambertian_order: f64,
) -> Result<CalibrateOutcome, CliError> {
    if !(lambertian_order.is_finite() && lambertian_order > 0.0) {
        return Err(CliError::invalid(format!(
            "--n must be a positive Lambertian order, got {lambertian_order}"
        )));
    }
    let (distances, powers) = read_calibration_csv(in_path)?;
    let fit = calibrate_channel(&distances, &powers, lambertian_order)?;
    write_json(out_path, &fit.channel)?;

    let mut summary = format!(
        "calibrate: gamma {:.6}, K {:.4} dBW, r^2 {:.6}, residual {:.3e} dB over {} points",
        fit.channel.gamma(),
        fit.channel.k_db(),
        fit.r_squared,
        fit.residual_rms_db,
        fit.n_points
    );
    if fit.low_confidence {
        summary.push_str(" (low confidence: only two distinct distances)");
    }
    Ok(CalibrateOutcome {
        out_path: out_path.to_path_buf(),
        fit,
        summary,
    })
}

/// Parses a calibration CSV into distance and power columns.
pub fn read_calibration_csv(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let header = reader
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != CALIBRATION_CSV_HEADER {
        return Err(CliError::invalid(format!(
            "{}: expected header {CALIBRATION_CSV_HEADER:?}, got {header:?}",
            path.display()
        )));
    }

    let mut distances = Vec::new();
    let mut powers = Vec::new();
    for row in reader.deserialize::<(f64, f64)>() {
        let (d, p) = row.map_err(|e| csv_error(path, e))?;
        distances.push(d);
        powers.push(p);
    }
    if distances.len() < MIN_CALIBRATION_ROWS {
        return Err(CliError::invalid(format!(
            "{}: calibration needs at least {MIN_CALIBRATION_ROWS} rows, got {}",
            path.display(),
            distances.len()
        )));
    }
    Ok((distances, powers))
}

fn csv_error(path: &Path, err: csv::Error) -> CliError {
    if err.is_io_error() {
        CliError::Io {
            message: format!("{}: {err}", path.display()),
        }
    } else {
        CliError::invalid(format!("{}: {err}", path.display()))
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use lws_core::ChannelParams;

    fn write_power_law_csv(dir: &Path, k: f64, gamma: f64, distances: &[f64]) -> PathBuf {
        let path = dir.join("samples.csv");
        let mut text = String::from("d_m,p_w\n");
        for &d in distances {
            text.push_str(&format!("{d},{}\n", k * d.powf(-gamma)));
        }
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn noiseless_power_law_round_trips_through_the_artifact() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_power_law_csv(dir.path(), 1e-4, 2.0, &[5.0, 10.0, 20.0, 40.0]);
        let out = dir.path().join("channel.json");
        let outcome = run(&input, &out, 1.0).unwrap();
        assert!(
            (outcome.fit.channel.gamma() - 2.0).abs() < 1e-9 * 2.0,
            "gamma = {}",
            outcome.fit.channel.gamma()
        );
        assert!(outcome.summary.contains("r^2"), "{}", outcome.summary);

        let back: ChannelParams =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!((back.gamma() - 2.0).abs() < 1e-9 * 2.0, "artifact gamma");
        assert!((back.k_lin() - 1e-4).abs() < 1e-9 * 1e-4, "artifact K");
    }

    #[test]
    fn fewer_than_three_rows_is_a_validation_failure() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_power_law_csv(dir.path(), 1e-4, 2.0, &[5.0, 10.0]);
        let err = run(&input, &dir.path().join("c.json"), 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("at least 3"), "{err}");
    }

    #[test]
    fn duplicate_distances_only_is_an_estimation_failure() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dup.csv");
        std::fs::write(&path, "d_m,p_w\n10,1e-6\n10,1.1e-6\n10,0.9e-6\n").unwrap();
        let err = run(&path, &dir.path().join("c.json"), 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("rank_deficient"), "{err}");
    }

    #[test]
    fn wrong_header_names_the_expected_one() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "dist,power\n10,1e-6\n20,2e-7\n40,5e-8\n").unwrap();
        let err = run(&path, &dir.path().join("c.json"), 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("d_m,p_w"), "{err}");
    }

    #[test]
    fn unparseable_rows_and_missing_files_split_into_2_and_1() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.csv");
        std::fs::write(&path, "d_m,p_w\n10,not-a-number\n20,2e-7\n40,5e-8\n").unwrap();
        let err = run(&path, &dir.path().join("c.json"), 1.0).unwrap_err();
        assert_eq!(err.exit_code(), 2, "garbage content: {err}");

        let err = run(&dir.path().join("absent.csv"), &dir.path().join("c.json"), 1.0)
            .unwrap_err();
        assert_eq!(err.exit_code(), 1, "missing file: {err}");
    }

    #[test]
    fn non_positive_lambertian_order_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let input = write_power_law_csv(dir.path(), 1e-4, 2.0, &[5.0, 10.0, 20.0]);
        let err = run(&input, &dir.path().join("c.json"), 0.0).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("--n"), "{err}");
    }
}
