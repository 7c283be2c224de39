//! Subcommand bodies. Each writes its primary output to the given path, or
//! to `stdout` when no path is given.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use flexmove_core::analysis::{sweep_n, table_report};
use flexmove_core::signal::{design_butterworth, filtfilt};
use flexmove_core::simulate::{integrate_motion, residual_report, tip_trace, ResidualSource};
use serde_json::json;

use crate::config::{ConfigError, FrequencySource, Settings};
use crate::io;
use crate::CliError;

/// Masses of the reference amplitude table [kg].
pub const TABLE_MASSES: [f64; 4] = [0.02, 0.06, 0.075, 0.09];
pub const DEFAULT_UNMATCHED_N: f64 = 2.5;

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })
}

fn emit<F>(out: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> csv::Result<()>,
{
    let result = match out {
        Some(path) => {
            let mut file = create(path)?;
            write(&mut file).and_then(|_| file.flush().map_err(Into::into))
        }
        None => write(stdout),
    };
    result.map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(err) => CliError::Output(err),
        other => CliError::Output(std::io::Error::other(format!("{other:?}"))),
    })
}

/// Writes the `t,s,v,a` setpoint table and a short summary.
pub fn plan(
    settings: &Settings,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = settings.motion_spec()?;
    let samples = spec.sample_uniform(settings.rate())?;
    emit(out, stdout, |w| io::write_setpoints(w, &samples))?;
    let summary: &mut dyn Write = if out.is_some() { stdout } else { stderr };
    writeln!(
        summary,
        "k = {} rad/s, n = {}",
        spec.frequency(),
        spec.multiple()
    )?;
    writeln!(summary, "t1 = {} s", spec.duration())?;
    writeln!(summary, "p = {} rad/s", spec.forcing_frequency())?;
    writeln!(
        summary,
        "peak acceleration = {} m/s^2",
        spec.control_amplitude()
    )?;
    writeln!(summary, "samples = {}", samples.len())?;
    Ok(())
}

/// Integrates the relative motion, prints the residual report as JSON and
/// optionally writes the trace (`t,x_r,v_r,a_r`, or `t,a_tip` with `tip`).
pub fn simulate(
    settings: &Settings,
    tip: bool,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = settings.motion_spec()?;
    let step = settings.dt.unwrap_or(spec.duration() / 2e4);
    let tolerance = settings.tolerance.unwrap_or(spec.default_tolerance());
    let trace = integrate_motion(&spec, step)?;
    let report = residual_report(&spec, ResidualSource::Trace(&trace), tolerance)?;
    let exact = residual_report(&spec, ResidualSource::ClosedForm, tolerance)?;

    if let Some(path) = out {
        if tip {
            let series = tip_trace(&spec, settings.rate())?;
            emit(Some(path), stdout, |w| {
                io::write_series(w, "a_tip", &series)
            })?;
        } else {
            let forcing = |t: f64| spec.acceleration(t.min(spec.duration())).unwrap_or(0.0);
            let accel = trace.accelerations(spec.frequency(), &forcing);
            let rows = trace
                .iter()
                .zip(accel)
                .map(|((t, s), a)| [t, s.displacement, s.velocity, a]);
            emit(Some(path), stdout, |w| io::write_relative(w, rows))?;
        }
    }

    let doc = json!({
        "L": spec.length(),
        "k": spec.frequency(),
        "n": spec.multiple(),
        "m": spec.mass(),
        "mode": if spec.guarantees_quiescence() { "strict" } else { "exploratory" },
        "p": spec.forcing_frequency(),
        "t1": spec.duration(),
        "step": trace.step(),
        "x_end": report.x_end,
        "v_end": report.v_end,
        "amplitude": report.amplitude,
        "closed_form_amplitude": exact.amplitude,
        "tolerance": report.tolerance,
        "quiescent": report.quiescent,
        "action": report.action,
    });
    writeln!(
        stdout,
        "{}",
        serde_json::to_string_pretty(&doc).expect("report serializes")
    )?;
    Ok(())
}

/// `n,t1,residual,energy,quiescent` over a range of multiples.
pub fn sweep(
    settings: &Settings,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let length = settings.require_length()?;
    let (k, m) = settings.frequency_and_mass()?;
    let from = settings.n_from.ok_or(ConfigError::Missing("n-from"))?;
    let to = settings.n_to.ok_or(ConfigError::Missing("n-to"))?;
    let step = settings.step.ok_or(ConfigError::Missing("step"))?;
    let result = sweep_n(length, k, m, from, to, step)?;
    emit(out, stdout, |w| io::write_sweep(w, &result))
}

/// Zero-phase Butterworth lowpass of a `t,<value>` trace.
pub fn filter(
    settings: &Settings,
    input: &Path,
    column: Option<&str>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let trace = io::load_trace_file(input, column)?;
    let design = design_butterworth(settings.order(), settings.cutoff_hz(), trace.series.rate())?;
    let filtered = filtfilt(&design, &trace.series)?;
    emit(out, stdout, |w| {
        io::write_timed(w, &trace.name, &trace.times, filtered.values())
    })
}

/// Matched vs. unmatched residual amplitudes per tip mass.
pub fn report(
    settings: &Settings,
    csv: bool,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let length = settings.require_length()?;
    let beam = match settings.frequency_source()? {
        FrequencySource::Beam(beam) => beam,
        FrequencySource::Direct(_) => return Err(ConfigError::Missing("beam").into()),
    };
    let n = settings.n.unwrap_or(2.0);
    if n.fract() != 0.0 || n < 2.0 || n > f64::from(u32::MAX) {
        return Err(ConfigError::NotAnInteger {
            name: "n",
            value: n,
        }
        .into());
    }
    let masses = settings
        .masses
        .clone()
        .unwrap_or_else(|| TABLE_MASSES.to_vec());
    let unmatched = settings.unmatched_n.unwrap_or(DEFAULT_UNMATCHED_N);
    let table = table_report(&masses, &beam, length, n as u32, unmatched)?;
    if csv {
        emit(out, stdout, |w| io::write_amplitude_table(w, &table))
    } else {
        let text = table.to_string();
        match out {
            Some(path) => {
                let mut file = create(path)?;
                file.write_all(text.as_bytes())?;
                file.flush()?;
            }
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}
