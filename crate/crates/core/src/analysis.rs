//! Sweeps over the period multiple, the energy figure, and matched vs.
//! unmatched comparisons.

use alloc::vec::Vec;
use core::fmt;

use libm::{fabs, floor, round};

use crate::beam::BeamSpec;
use crate::error::{positive, Error, Result};
use crate::profile::{Mode, MotionSpec};
use crate::quad::simpson;
use crate::simulate::{residual_report, ResidualReport, ResidualSource};

/// Integer detection slack for multiples produced by `from + i·step`.
const INTEGER_SLACK: f64 = 1e-9;

/// One row of an `n` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// Period multiple.
    pub multiple: f64,
    /// Move duration `t₁` [s].
    pub duration: f64,
    /// Residual phasor amplitude at `t₁` [m].
    pub residual: f64,
    /// [`energy_figure`] [J].
    pub energy: f64,
    pub quiescent: bool,
}

/// Sweep rows ordered by increasing `n`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Spec for multiple `n`: strict when `n` is (within rounding of) an
/// integer `≥ 2`, exploratory otherwise.
pub fn spec_for_multiple(
    length: f64,
    frequency: f64,
    mass: f64,
    multiple: f64,
) -> Result<MotionSpec> {
    let nearest = round(multiple);
    if nearest >= 2.0 && fabs(multiple - nearest) <= INTEGER_SLACK {
        MotionSpec::new(length, frequency, nearest, mass, Mode::Strict)
    } else {
        MotionSpec::new(length, frequency, multiple, mass, Mode::Exploratory)
    }
}

/// Closed-form residual and energy for `n = from, from + step, …, ≤ to`.
///
/// Only integer rows `≥ 2` can be flagged quiescent.
pub fn sweep_n(
    length: f64,
    frequency: f64,
    mass: f64,
    from: f64,
    to: f64,
    step: f64,
) -> Result<SweepResult> {
    positive("sweep step", step)?;
    if !from.is_finite() || from <= 1.0 {
        return Err(Error::ResonantMultiple(from));
    }
    if !to.is_finite() || to < from {
        return Err(Error::EmptyRange { from, to });
    }
    let count = floor((to - from) / step + INTEGER_SLACK) as usize + 1;
    let rows = (0..count)
        .map(|i| {
            let spec = spec_for_multiple(length, frequency, mass, from + i as f64 * step)?;
            let report =
                residual_report(&spec, ResidualSource::ClosedForm, spec.default_tolerance())?;
            Ok(SweepRow {
                multiple: spec.multiple(),
                duration: spec.duration(),
                residual: report.amplitude,
                energy: energy_figure(&spec, spec.default_quadrature_step())?,
                quiescent: report.quiescent,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { rows })
}

/// Actuator energy figure `∫₀^{t₁} m·|a(t)·v(t)| dt` [J].
///
/// For the sine law this equals `m·L²·p²/π²`.
pub fn energy_figure(spec: &MotionSpec, step: f64) -> Result<f64> {
    positive("quadrature step", step)?;
    let m = spec.mass();
    Ok(simpson(
        |t| m * fabs(spec.acceleration_unchecked(t) * spec.velocity_unchecked(t)),
        0.0,
        spec.duration(),
        step,
    ))
}

/// `unmatched.amplitude / max(matched.amplitude, matched.tolerance)`.
pub fn suppression_ratio(matched: &ResidualReport, unmatched: &ResidualReport) -> f64 {
    unmatched.amplitude / matched.amplitude.max(matched.tolerance)
}

/// Matched and unmatched residuals for one payload mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassComparison {
    /// Tip mass [kg].
    pub mass: f64,
    /// Natural frequency from the beam model [rad/s].
    pub frequency: f64,
    pub matched: ResidualReport,
    pub unmatched: ResidualReport,
}

impl MassComparison {
    pub fn suppression(&self) -> f64 {
        suppression_ratio(&self.matched, &self.unmatched)
    }
}

/// Simulated counterpart of an experimental amplitude table.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeTable {
    pub length: f64,
    pub matched_multiple: u32,
    pub unmatched_multiple: f64,
    pub columns: Vec<MassComparison>,
}

/// For each tip mass, derive `k` from the beam and compare the residual of
/// the matched plan (integer `n`) with the same law timed by a non-integer
/// multiple.
pub fn table_report(
    masses: &[f64],
    beam: &BeamSpec,
    length: f64,
    matched_multiple: u32,
    unmatched_multiple: f64,
) -> Result<AmplitudeTable> {
    let columns = masses
        .iter()
        .map(|&mass| {
            let frequency = beam.with_tip_mass(mass)?.natural_frequency()?;
            let matched = MotionSpec::strict(length, frequency, matched_multiple, mass)?;
            let unmatched = MotionSpec::new(
                length,
                frequency,
                unmatched_multiple,
                mass,
                Mode::Exploratory,
            )?;
            Ok(MassComparison {
                mass,
                frequency,
                matched: residual_report(
                    &matched,
                    ResidualSource::ClosedForm,
                    matched.default_tolerance(),
                )?,
                unmatched: residual_report(
                    &unmatched,
                    ResidualSource::ClosedForm,
                    unmatched.default_tolerance(),
                )?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeTable {
        length,
        matched_multiple,
        unmatched_multiple,
        columns,
    })
}

impl fmt::Display for AmplitudeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Simulated residual amplitude at the end of a {} m move [mm]",
            self.length
        )?;
        writeln!(
            f,
            "(noise-free model; measured laboratory amplitudes include hardware effects and are not reproduced)"
        )?;
        write!(f, "{:<34}", "m [kg]")?;
        for c in &self.columns {
            write!(f, "{:>12}", c.mass)?;
        }
        writeln!(f)?;
        write!(f, "{:<34}", "k [rad/s]")?;
        for c in &self.columns {
            write!(f, "{:>12.4}", c.frequency)?;
        }
        writeln!(f)?;
        write!(
            f,
            "{:<34}",
            alloc::format!("unmatched (n = {})", self.unmatched_multiple)
        )?;
        for c in &self.columns {
            write!(f, "{:>12.4}", c.unmatched.amplitude * 1e3)?;
        }
        writeln!(f)?;
        write!(
            f,
            "{:<34}",
            alloc::format!("matched (n = {})", self.matched_multiple)
        )?;
        for c in &self.columns {
            write!(f, "{:>12.3e}", c.matched.amplitude * 1e3)?;
        }
        writeln!(f)?;
        write!(f, "{:<34}", "suppression ratio")?;
        for c in &self.columns {
            write!(f, "{:>12.3e}", c.suppression())?;
        }
        writeln!(f)
    }
}
