//! `lws`: command-line front end for the light-wave sensing toolkit.
//!
//! Subcommands compose through files: `simulate` writes a voltage series
//! CSV plus a ground-truth sidecar, `calibrate` turns measurements into a
//! channel JSON, `estimate` inverts a series into a physical quantity,
//! and the `breathing`/`occupancy` families cover the labelled-dataset
//! workflows. Every command is deterministic given its inputs and seeds.
//!
//! Exit codes: 0 success, 1 file-system failure, 2 malformed input,
//! 3 estimation failure (with a machine-readable reason code).

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use lws_cli::commands::breathing as breathing_cmd;
use lws_cli::commands::calibrate as calibrate_cmd;
use lws_cli::commands::estimate::{self as estimate_cmd, EstimateRequest, VitalBand};
use lws_cli::commands::occupancy as occupancy_cmd;
use lws_cli::commands::simulate::{self as simulate_cmd, ScenarioKind};
use lws_cli::error::CliError;

#[derive(Parser)]
#[command(
    name = "lws",
    version,
    about = "Light-wave sensing toolkit: simulate scenarios, calibrate channels, estimate speed, vitals, occupancy, and displacement"
)]
struct Cli {
    /// Seed override: replaces the config seed (simulate) or the default
    /// seed (breathing build-dataset / crossval).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output path; for `simulate` a path prefix that grows `.csv` and
    /// `.meta.json`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Suppress summary lines (primary results still print).
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a voltage series from a scenario config JSON.
    Simulate {
        #[command(subcommand)]
        kind: SimulateCmd,
    },
    /// Fit path-loss parameters from a d_m,p_w measurement CSV.
    Calibrate {
        /// Measurement CSV with header d_m,p_w.
        #[arg(long = "in")]
        input: PathBuf,
        /// Lambertian order to carry into the channel artifact (the
        /// power-law fit does not constrain it).
        #[arg(long, default_value_t = 1.0)]
        n: f64,
    },
    /// Invert a series CSV into a physical estimate (JSON report).
    Estimate {
        #[command(subcommand)]
        kind: EstimateCmd,
    },
    /// Breathing dataset workflow: simulate, cross-validate, classify.
    Breathing {
        #[command(subcommand)]
        action: BreathingCmd,
    },
    /// Occupancy database workflow.
    Occupancy {
        #[command(subcommand)]
        action: OccupancyCmd,
    },
}

#[derive(Subcommand)]
enum SimulateCmd {
    /// Straight or curved drive-by pass.
    Vehicle {
        /// Scenario config JSON (kind: straight_pass or curved_pass).
        #[arg(long)]
        config: PathBuf,
    },
    /// Breathing subject at a fixed baseline.
    Breathing {
        /// Scenario config JSON (kind: breathing).
        #[arg(long)]
        config: PathBuf,
    },
    /// Slot-wise line-of-sight blockage by occupants.
    Occupancy {
        /// Scenario config JSON (kind: occupancy).
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum EstimateCmd {
    /// Vehicle speed from a drive-by power trace.
    Speed {
        /// Series CSV to invert.
        #[arg(long = "in")]
        input: PathBuf,
        /// Channel JSON from `calibrate` (or written by hand).
        #[arg(long)]
        channel: PathBuf,
        /// Sensor-to-road lateral offset in metres.
        #[arg(long = "lateral-offset", default_value_t = 0.0)]
        lateral_offset: f64,
        /// Use the curved-road model (needs --radius).
        #[arg(long, requires = "radius")]
        curved: bool,
        /// Curve radius in metres.
        #[arg(long, requires = "curved")]
        radius: Option<f64>,
    },
    /// Respiration or heart rate from a chest-motion trace.
    Vitals {
        /// Series CSV to invert.
        #[arg(long = "in")]
        input: PathBuf,
        /// Which physiological band to search.
        #[arg(long, value_enum)]
        band: BandArg,
    },
    /// Occupant count by divergence matching against a database.
    Occupancy {
        /// Series CSV to classify.
        #[arg(long = "in")]
        input: PathBuf,
        /// Database JSON from `occupancy build-db`.
        #[arg(long)]
        db: PathBuf,
    },
    /// Chest displacement waveform peak from a voltage trace.
    Displacement {
        /// Series CSV to invert.
        #[arg(long = "in")]
        input: PathBuf,
        /// Channel JSON describing the path loss.
        #[arg(long)]
        channel: PathBuf,
        /// Resting subject-to-sensor distance in metres.
        #[arg(long)]
        reference: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BandArg {
    /// Respiration band.
    Resp,
    /// Heart band.
    Heart,
}

#[derive(Subcommand)]
enum BreathingCmd {
    /// Simulate a balanced labelled corpus and write its features CSV.
    BuildDataset {
        /// Recordings to generate per breathing class.
        #[arg(long = "per-class")]
        per_class: usize,
        /// Signal-to-noise ratio for the generated recordings, in dB.
        #[arg(long = "snr-db", default_value_t = breathing_cmd::DEFAULT_DATASET_SNR_DB)]
        snr_db: f64,
    },
    /// Stratified k-fold cross-validation over a features CSV.
    Crossval {
        /// Features CSV (from build-dataset or compatible).
        #[arg(long = "in")]
        input: PathBuf,
        /// Number of folds.
        #[arg(long, default_value_t = 10)]
        folds: usize,
        /// Neighbourhood size for the classifier.
        #[arg(long, default_value_t = lws_mlkit::DEFAULT_KNN_K)]
        k: usize,
    },
    /// Classify one recording against a labelled features CSV.
    Classify {
        /// Labelled features CSV to use as the training set.
        #[arg(long)]
        train: PathBuf,
        /// Series CSV of the recording to classify.
        #[arg(long = "in")]
        input: PathBuf,
        /// Neighbourhood size for the classifier.
        #[arg(long, default_value_t = lws_mlkit::DEFAULT_KNN_K)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum OccupancyCmd {
    /// Pool labelled occupancy runs into a matching database.
    BuildDb {
        /// Histogram bins shared by every database entry.
        #[arg(long, default_value_t = occupancy_cmd::DEFAULT_BIN_COUNT)]
        bins: usize,
        /// Simulated run CSVs, each with its .meta.json sidecar.
        #[arg(required = true, value_name = "RUN_CSV")]
        runs: Vec<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let Cli {
        seed,
        out,
        quiet,
        command,
    } = cli;

    match command {
        Command::Simulate { kind } => {
            let (scenario_kind, config) = match kind {
                SimulateCmd::Vehicle { config } => (ScenarioKind::Vehicle, config),
                SimulateCmd::Breathing { config } => (ScenarioKind::Breathing, config),
                SimulateCmd::Occupancy { config } => (ScenarioKind::Occupancy, config),
            };
            let base = require_out(&out, "simulate")?;
            let outcome =
                simulate_cmd::run(scenario_kind, &config, &base.display().to_string(), seed)?;
            if !quiet {
                println!("{}", outcome.summary);
            }
        }

        Command::Calibrate { input, n } => {
            let out = require_out(&out, "calibrate")?;
            let outcome = calibrate_cmd::run(&input, &out, n)?;
            if !quiet {
                println!("{}", outcome.summary);
            }
        }

        Command::Estimate { kind } => {
            let request = match kind {
                EstimateCmd::Speed {
                    input,
                    channel,
                    lateral_offset,
                    curved: _,
                    radius,
                } => EstimateRequest::Speed {
                    input,
                    channel,
                    lateral_offset_m: lateral_offset,
                    curved_radius_m: radius,
                },
                EstimateCmd::Vitals { input, band } => EstimateRequest::Vitals {
                    input,
                    band: match band {
                        BandArg::Resp => VitalBand::Respiration,
                        BandArg::Heart => VitalBand::Heart,
                    },
                },
                EstimateCmd::Occupancy { input, db } => EstimateRequest::Occupancy { input, db },
                EstimateCmd::Displacement {
                    input,
                    channel,
                    reference,
                } => EstimateRequest::Displacement {
                    input,
                    channel,
                    reference_m: reference,
                },
            };
            let outcome = estimate_cmd::run(&request)?;
            match &out {
                Some(path) => {
                    std::fs::write(path, &outcome.json).map_err(|e| CliError::io_at(path, e))?;
                    if !quiet {
                        println!("{} -> {}", outcome.summary, path.display());
                    }
                }
                None => print!("{}", outcome.json),
            }
        }

        Command::Breathing { action } => match action {
            BreathingCmd::BuildDataset { per_class, snr_db } => {
                let out = require_out(&out, "breathing build-dataset")?;
                let outcome =
                    breathing_cmd::build_dataset(per_class, snr_db, seed.unwrap_or(0), &out)?;
                if !quiet {
                    println!("{}", outcome.summary);
                }
            }
            BreathingCmd::Crossval { input, folds, k } => {
                let outcome = breathing_cmd::crossval(&input, folds, k, seed.unwrap_or(0))?;
                println!("{}", outcome.accuracy_line);
                if !quiet {
                    print!("{}", outcome.table);
                }
                if let Some(path) = &out {
                    std::fs::write(path, &outcome.json)
                        .map_err(|e| CliError::io_at(path, e))?;
                    if !quiet {
                        println!("wrote {}", path.display());
                    }
                }
            }
            BreathingCmd::Classify { train, input, k } => {
                let outcome = breathing_cmd::classify(&train, &input, k)?;
                println!("{}", outcome.label);
                if outcome.k_clamped && !quiet {
                    eprintln!(
                        "note: k clamped to {} (training set is smaller than requested k)",
                        outcome.k_used
                    );
                }
            }
        },

        Command::Occupancy { action } => match action {
            OccupancyCmd::BuildDb { bins, runs } => {
                let out = require_out(&out, "occupancy build-db")?;
                let outcome = occupancy_cmd::build_db(&runs, bins, &out)?;
                if !quiet {
                    println!("{}", outcome.summary);
                }
            }
        },
    }
    Ok(())
}

fn require_out(out: &Option<PathBuf>, command: &str) -> Result<PathBuf, CliError> {
    out.clone()
        .ok_or_else(|| CliError::invalid(format!("--out is required for {command}")))
}
