//! Series persistence: CSV with a `t_s,v_volts` header.
//!
//! Floats are written in shortest-round-trip form, so a read-back series
//! carries exactly the voltages the simulator produced. Timestamps must be
//! uniform; the reader infers the sample rate from the first interval and
//! rejects rows that drift off that grid.

use std::path::Path;

use lws_core::TimeSeries;

use crate::SimError;

/// Header required on every series CSV.
pub const SERIES_CSV_HEADER: &str = "t_s,v_volts";

/// Writes `series` as CSV with LF line endings.
pub fn write_series_csv(path: &Path, series: &TimeSeries) -> Result<(), SimError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)?;
    writer.write_record(["t_s", "v_volts"])?;
    for (t, &v) in series.times().zip(series.values()) {
        writer.serialize((t, v))?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a series CSV produced by [`write_series_csv`] (or any
/// uniformly-sampled two-column file with the same header).
pub fn read_series_csv(path: &Path) -> Result<TimeSeries, SimError> {
    let mut reader = csv::ReaderBuilder::new().from_path(path)?;
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != SERIES_CSV_HEADER {
        return Err(SimError::BadHeader {
            expected: SERIES_CSV_HEADER,
            got: header,
        });
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for row in reader.deserialize::<(f64, f64)>() {
        let (t, v) = row?;
        times.push(t);
        values.push(v);
    }
    if times.len() < 2 {
        return Err(SimError::CsvTooShort { rows: times.len() });
    }

    let dt = times[1] - times[0];
    if !(dt.is_finite() && dt > 0.0) {
        return Err(SimError::IrregularSampling {
            row: 2,
            expected_s: times[0],
            got_s: times[1],
        });
    }
    let rate = 1.0 / dt;
    for (i, &t) in times.iter().enumerate() {
        let expected = times[0] + i as f64 * dt;
        // Scale-aware tolerance: off-grid by more than a millionth of a
        // sample interval is a different clock, not rounding.
        if (t - expected).abs() > 1e-6 * dt {
            return Err(SimError::IrregularSampling {
                row: i + 2,
                expected_s: expected,
                got_s: t,
            });
        }
    }
    Ok(TimeSeries::new(rate, times[0], values)?)
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
