//! CSV formats: setpoint tables, relative and accelerometer traces, sweeps,
//! and trace ingestion.
//!
//! Every number is written in scientific notation with 12 significant
//! digits, so a file read back and written again is byte-identical.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use flexmove_core::analysis::{AmplitudeTable, SweepResult};
use flexmove_core::{MotionSample, TimeSeries};
use thiserror::Error;

/// Relative spread allowed between a time step and the median step.
pub const JITTER_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("trace header must start with a `t` column, found `{0}`")]
    BadHeader(String),
    #[error("trace has no column named `{0}`")]
    MissingColumn(String),
    #[error("trace needs at least 2 rows, found {0}")]
    TooFewRows(usize),
    #[error("row {row}, column `{column}`: `{value}` is not a number")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },
    #[error("non-uniform sampling at row {row}: step {step} s deviates from the median step {median} s by more than 0.1%")]
    NonUniform { row: usize, step: f64, median: f64 },
    #[error(transparent)]
    Series(#[from] flexmove_core::Error),
}

impl TraceError {
    pub fn is_io(&self) -> bool {
        matches!(self, TraceError::Io { .. })
    }
}

/// 12 significant digits, scientific notation.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

fn write_rows<W, I>(out: W, header: &[&str], rows: I) -> csv::Result<()>
where
    W: Write,
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|v| format_number(*v)))?;
    }
    w.flush()?;
    Ok(())
}

/// `t,s,v,a` setpoint table.
pub fn write_setpoints<W: Write>(out: W, samples: &[MotionSample]) -> csv::Result<()> {
    write_rows(
        out,
        &["t", "s", "v", "a"],
        samples.iter().map(|s| vec![s.t, s.s, s.v, s.a]),
    )
}

/// `t,x_r,v_r,a_r` relative-motion trace.
pub fn write_relative<W: Write>(
    out: W,
    rows: impl IntoIterator<Item = [f64; 4]>,
) -> csv::Result<()> {
    write_rows(
        out,
        &["t", "x_r", "v_r", "a_r"],
        rows.into_iter().map(|r| r.to_vec()),
    )
}

/// Two-column `t,<name>` trace of a uniformly sampled series.
pub fn write_series<W: Write>(out: W, name: &str, series: &TimeSeries) -> csv::Result<()> {
    write_rows(out, &["t", name], series.iter().map(|(t, v)| vec![t, v]))
}

/// Two-column trace with explicit time stamps.
pub fn write_timed<W: Write>(out: W, name: &str, times: &[f64], values: &[f64]) -> csv::Result<()> {
    write_rows(
        out,
        &["t", name],
        times.iter().zip(values).map(|(&t, &v)| vec![t, v]),
    )
}

/// `n,t1,residual,energy,quiescent`; the flag is written as 1 or 0.
pub fn write_sweep<W: Write>(out: W, sweep: &SweepResult) -> csv::Result<()> {
    write_rows(
        out,
        &["n", "t1", "residual", "energy", "quiescent"],
        sweep.rows.iter().map(|r| {
            vec![
                r.multiple,
                r.duration,
                r.residual,
                r.energy,
                if r.quiescent { 1.0 } else { 0.0 },
            ]
        }),
    )
}

/// `mass,k,matched,unmatched,ratio` (amplitudes in metres).
pub fn write_amplitude_table<W: Write>(out: W, table: &AmplitudeTable) -> csv::Result<()> {
    write_rows(
        out,
        &["mass", "k", "matched", "unmatched", "ratio"],
        table.columns.iter().map(|c| {
            vec![
                c.mass,
                c.frequency,
                c.matched.amplitude,
                c.unmatched.amplitude,
                c.suppression(),
            ]
        }),
    )
}

/// Header plus all-numeric rows of a CSV document.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, index: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[index]).collect()
    }
}

/// Parses a CSV document whose cells are all numbers.
pub fn load_table(document: &str) -> Result<Table, TraceError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(document.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .zip(&header)
            .map(|(cell, column)| {
                cell.parse::<f64>().map_err(|_| TraceError::NonNumeric {
                    // 1-based, header is line 1
                    row: i + 2,
                    column: column.clone(),
                    value: cell.to_owned(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}

/// A loaded trace: the original time stamps plus the uniform series.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    /// Name of the value column.
    pub name: String,
    pub times: Vec<f64>,
    pub series: TimeSeries,
}

/// Loads the first value column of a `t,<value>,…` document.
pub fn load_trace(document: &str) -> Result<Trace, TraceError> {
    load_trace_column(document, None)
}

/// Loads the named value column (or the first one after `t`).
///
/// The rate is the reciprocal of the median time step; every step must lie
/// within 0.1% of that median.
pub fn load_trace_column(document: &str, column: Option<&str>) -> Result<Trace, TraceError> {
    let table = load_table(document)?;
    match table.header.first().map(String::as_str) {
        Some("t") if table.header.len() >= 2 => {}
        other => return Err(TraceError::BadHeader(other.unwrap_or("").to_owned())),
    }
    let index = match column {
        Some(name) if name != "t" => table
            .column_index(name)
            .ok_or_else(|| TraceError::MissingColumn(name.to_owned()))?,
        Some(name) => return Err(TraceError::MissingColumn(name.to_owned())),
        None => 1,
    };
    if table.rows.len() < 2 {
        return Err(TraceError::TooFewRows(table.rows.len()));
    }
    let times = table.column(0);
    let steps: Vec<f64> = times.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    if median.is_nan() || median <= 0.0 {
        return Err(TraceError::NonUniform {
            row: 3,
            step: steps[0],
            median,
        });
    }
    if let Some((i, &step)) = steps
        .iter()
        .enumerate()
        .find(|(_, s)| ((**s - median) / median).abs() > JITTER_TOLERANCE)
    {
        return Err(TraceError::NonUniform {
            row: i + 3,
            step,
            median,
        });
    }
    let series = TimeSeries::new(1.0 / median, times[0], table.column(index))?;
    Ok(Trace {
        name: table.header[index].clone(),
        times,
        series,
    })
}

/// Reads and parses a trace file.
pub fn load_trace_file(path: &Path, column: Option<&str>) -> Result<Trace, TraceError> {
    let document = fs::read_to_string(path).map_err(|source| TraceError::Io {
        path: path.to_owned(),
        source,
    })?;
    load_trace_column(&document, column)
}
