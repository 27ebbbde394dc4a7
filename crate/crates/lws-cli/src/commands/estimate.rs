//! `lws estimate {speed|vitals|occupancy|displacement}`: invert a voltage
//! series into the requested physical quantity and emit an estimate
//! report, scored against ground truth when the series has a simulator
//! sidecar.

use std::path::{Path, PathBuf};

use lws_core::{ChannelParams, Photodetector, TimeSeries};
use lws_estimators::{
    estimate_displacement, estimate_heart_rate, estimate_occupancy, estimate_respiration_rate,
    estimate_speed_curved, estimate_speed_ls, sinusoid_peak_displacement, OccupancyDatabase,
    OccupancyEstimate, RateEstimate,
};
use lws_sim::{read_series_csv, GroundTruth, CHEST_EXCURSION_M};
use serde::Serialize;

use crate::artifacts::{
    load_metadata, read_json, render_json, Diagnostics, EstimateReport, Score, SCHEMA_VERSION,
};
use crate::error::CliError;

/// One parsed `estimate` invocation.
#[derive(Debug)]
pub enum EstimateRequest {
    Speed {
        input: PathBuf,
        channel: PathBuf,
        lateral_offset_m: f64,
        /// Curve radius in metres; `Some` selects the curved-road model.
        curved_radius_m: Option<f64>,
    },
    Vitals {
        input: PathBuf,
        band: VitalBand,
    },
    Occupancy {
        input: PathBuf,
        db: PathBuf,
    },
    Displacement {
        input: PathBuf,
        channel: PathBuf,
        reference_m: f64,
    },
}

/// Which physiological band a vitals estimate searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VitalBand {
    Respiration,
    Heart,
}

impl VitalBand {
    fn name(self) -> &'static str {
        match self {
            VitalBand::Respiration => "respiration",
            VitalBand::Heart => "heart",
        }
    }
}

/// The rendered report plus a one-line human summary.
#[derive(Debug)]
pub struct EstimateOutcome {
    pub json: String,
    pub summary: String,
}

/// Runs the requested estimator over the input series.
pub fn run(request: &EstimateRequest) -> Result<EstimateOutcome, CliError> {
    match request {
        EstimateRequest::Speed {
            input,
            channel,
            lateral_offset_m,
            curved_radius_m,
        } => speed(input, channel, *lateral_offset_m, *curved_radius_m),
        EstimateRequest::Vitals { input, band } => vitals(input, *band),
        EstimateRequest::Occupancy { input, db } => occupancy(input, db),
        EstimateRequest::Displacement {
            input,
            channel,
            reference_m,
        } => displacement(input, channel, *reference_m),
    }
}

#[derive(Debug, Serialize)]
struct SpeedParams {
    channel: ChannelParams,
    lateral_offset_m: f64,
}

#[derive(Debug, Serialize)]
struct SpeedReadout {
    speed_mps: f64,
    initial_range_m: f64,
    is_receding: bool,
    n_samples_used: usize,
}

fn speed(
    input: &Path,
    channel_path: &Path,
    lateral_offset_m: f64,
    curved_radius_m: Option<f64>,
) -> Result<EstimateOutcome, CliError> {
    if !(lateral_offset_m.is_finite() && lateral_offset_m >= 0.0) {
        return Err(CliError::invalid(format!(
            "--lateral-offset must be non-negative, got {lateral_offset_m}"
        )));
    }
    let channel: ChannelParams = read_json(channel_path)?;
    let series = load_series(input)?;
    let truth = load_metadata(input)?.map(|m| m.truth);
    let detector = Photodetector::unit_gain();

    if let Some(radius_m) = curved_radius_m {
        if !(radius_m.is_finite() && radius_m > 0.0) {
            return Err(CliError::invalid(format!(
                "--radius must be positive, got {radius_m}"
            )));
        }
        return curved_speed(&series, &channel, &detector, radius_m, truth);
    }

    let est = estimate_speed_ls(&series, &channel, &detector, lateral_offset_m)?;
    let score = truth.and_then(|t| match t {
        GroundTruth::StraightPass { speed_mps, .. } => Some(Score::new(speed_mps, est.speed_mps)),
        _ => None,
    });
    let summary = format!(
        "estimate speed_ls: {:.6} m/s, initial range {:.3} m",
        est.speed_mps, est.initial_range_m
    );
    let report = EstimateReport {
        schema_version: SCHEMA_VERSION,
        estimator: "speed_ls",
        params: SpeedParams {
            channel,
            lateral_offset_m,
        },
        estimate: SpeedReadout {
            speed_mps: est.speed_mps,
            initial_range_m: est.initial_range_m,
            is_receding: est.is_receding(),
            n_samples_used: est.n_samples_used,
        },
        diagnostics: Diagnostics {
            residual_rms: Some(est.residual_rms),
            samples_dropped: est.samples_dropped,
        },
        score,
    };
    Ok(EstimateOutcome {
        json: render_json(&report),
        summary,
    })
}

#[derive(Debug, Serialize)]
struct CurvedParams {
    channel: ChannelParams,
    radius_m: f64,
}

#[derive(Debug, Serialize)]
struct CurvedReadout {
    angular_speed_rad_s: f64,
    initial_beta_rad: f64,
    linear_speed_mps: f64,
    n_samples_used: usize,
}

fn curved_speed(
    series: &TimeSeries,
    channel: &ChannelParams,
    detector: &Photodetector,
    radius_m: f64,
    truth: Option<GroundTruth>,
) -> Result<EstimateOutcome, CliError> {
    let est = estimate_speed_curved(series, channel, detector, radius_m)?;
    let score = truth.and_then(|t| match t {
        GroundTruth::CurvedPass {
            linear_speed_mps, ..
        } => Some(Score::new(linear_speed_mps, est.linear_speed_mps)),
        _ => None,
    });
    let summary = format!(
        "estimate speed_curved: omega {:.6} rad/s, linear speed {:.6} m/s",
        est.angular_speed_rad_s, est.linear_speed_mps
    );
    let report = EstimateReport {
        schema_version: SCHEMA_VERSION,
        estimator: "speed_curved",
        params: CurvedParams {
            channel: channel.clone(),
            radius_m,
        },
        estimate: CurvedReadout {
            angular_speed_rad_s: est.angular_speed_rad_s,
            initial_beta_rad: est.initial_beta_rad,
            linear_speed_mps: est.linear_speed_mps,
            n_samples_used: est.n_samples_used,
        },
        diagnostics: Diagnostics {
            residual_rms: Some(est.residual_rms),
            samples_dropped: est.samples_dropped,
        },
        score,
    };
    Ok(EstimateOutcome {
        json: render_json(&report),
        summary,
    })
}

#[derive(Debug, Serialize)]
struct VitalsParams {
    band: &'static str,
}

fn vitals(input: &Path, band: VitalBand) -> Result<EstimateOutcome, CliError> {
    let series = load_series(input)?;
    let truth = load_metadata(input)?.map(|m| m.truth);
    let est: RateEstimate = match band {
        VitalBand::Respiration => estimate_respiration_rate(&series)?,
        VitalBand::Heart => estimate_heart_rate(&series)?,
    };
    // Only a breathing run carries a rate ground truth, and it lives in the
    // respiration band; a heart-band readout of one is never scored.
    let score = truth.and_then(|t| match (t, band) {
        (GroundTruth::Breathing { rate_bpm, .. }, VitalBand::Respiration) => {
            Some(Score::new(rate_bpm, est.rate_bpm))
        }
        _ => None,
    });
    let summary = format!(
        "estimate vitals_rate ({}): {:.2} per minute",
        band.name(),
        est.rate_bpm
    );
    let report = EstimateReport {
        schema_version: SCHEMA_VERSION,
        estimator: "vitals_rate",
        params: VitalsParams { band: band.name() },
        estimate: est,
        diagnostics: Diagnostics {
            residual_rms: None,
            samples_dropped: 0,
        },
        score,
    };
    Ok(EstimateOutcome {
        json: render_json(&report),
        summary,
    })
}

#[derive(Debug, Serialize)]
struct OccupancyParams {
    db: String,
}

fn occupancy(input: &Path, db_path: &Path) -> Result<EstimateOutcome, CliError> {
    let db: OccupancyDatabase = read_json(db_path)?;
    let series = load_series(input)?;
    let truth = load_metadata(input)?.map(|m| m.truth);
    let est: OccupancyEstimate = estimate_occupancy(&db, &series)?;
    let score = truth.and_then(|t| match t {
        GroundTruth::Occupancy { occupant_count, .. } => {
            Some(Score::new(occupant_count as f64, est.n_hat as f64))
        }
        _ => None,
    });
    let summary = format!(
        "estimate occupancy_kl: n_hat {} ({} candidate counts{})",
        est.n_hat,
        est.scores.len(),
        if est.low_confidence {
            ", low confidence"
        } else {
            ""
        }
    );
    let report = EstimateReport {
        schema_version: SCHEMA_VERSION,
        estimator: "occupancy_kl",
        params: OccupancyParams {
            db: db_path.display().to_string(),
        },
        estimate: est,
        diagnostics: Diagnostics {
            residual_rms: None,
            samples_dropped: 0,
        },
        score,
    };
    Ok(EstimateOutcome {
        json: render_json(&report),
        summary,
    })
}

#[derive(Debug, Serialize)]
struct DisplacementParams {
    channel: ChannelParams,
    reference_distance_m: f64,
}

#[derive(Debug, Serialize)]
struct DisplacementReadout {
    peak_displacement_m: f64,
    n_samples: usize,
}

fn displacement(
    input: &Path,
    channel_path: &Path,
    reference_m: f64,
) -> Result<EstimateOutcome, CliError> {
    if !(reference_m.is_finite() && reference_m > 0.0) {
        return Err(CliError::invalid(format!(
            "--reference must be a positive distance in metres, got {reference_m}"
        )));
    }
    let channel: ChannelParams = read_json(channel_path)?;
    let series = load_series(input)?;
    let truth = load_metadata(input)?.map(|m| m.truth);
    let detector = Photodetector::unit_gain();

    let est = estimate_displacement(&series, &channel, &detector, reference_m)?;
    let peak = sinusoid_peak_displacement(&est.series);
    let score = truth.and_then(|t| match t {
        GroundTruth::Breathing { depth, .. } => {
            Some(Score::new(depth * CHEST_EXCURSION_M, peak))
        }
        _ => None,
    });
    let summary = format!("estimate displacement: peak {:.6e} m", peak);
    let report = EstimateReport {
        schema_version: SCHEMA_VERSION,
        estimator: "displacement",
        params: DisplacementParams {
            channel,
            reference_distance_m: reference_m,
        },
        estimate: DisplacementReadout {
            peak_displacement_m: peak,
            n_samples: est.series.len(),
        },
        diagnostics: Diagnostics {
            residual_rms: None,
            samples_dropped: est.samples_invalid,
        },
        score,
    };
    Ok(EstimateOutcome {
        json: render_json(&report),
        summary,
    })
}

fn load_series(path: &Path) -> Result<TimeSeries, CliError> {
    Ok(read_series_csv(path)?)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
