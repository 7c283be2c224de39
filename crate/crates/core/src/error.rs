use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Validation and precondition failures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A quantity that must be strictly positive (and finite) was not.
    NonPositive {
        /// Name of the offending quantity.
        name: &'static str,
        /// The rejected value.
        value: f64,
    },
    /// The period multiple is at or below 1: the forcing would be resonant or
    /// faster than the payload's own oscillation.
    ResonantMultiple(f64),
    /// Strict planning requires an integer multiple `n ≥ 2`.
    NonIntegerMultiple(f64),
    /// Evaluation time outside the closed move interval `[0, t₁]`.
    TimeOutOfRange {
        /// Requested time.
        t: f64,
        /// End of the move.
        end: f64,
    },
    /// Integration step larger than 1/50 of the natural period.
    StepTooCoarse {
        /// Requested step.
        step: f64,
        /// Largest accepted step.
        max: f64,
    },
    /// A trace does not reach the end of the move.
    IncompleteTrace {
        /// Last time covered by the trace.
        covered: f64,
        /// Time the trace must reach.
        required: f64,
    },
    /// The beam section is thicker than it is wide.
    ThickSection {
        /// Section width.
        width: f64,
        /// Section thickness.
        thickness: f64,
    },
    /// Filter order outside `{2, 4, 6, 8}`.
    UnsupportedOrder(u32),
    /// Filter cutoff at or above the Nyquist frequency.
    CutoffAboveNyquist {
        /// Requested cutoff [Hz].
        cutoff: f64,
        /// Nyquist frequency [Hz].
        nyquist: f64,
    },
    /// Series sample rate differs from the filter design rate.
    RateMismatch {
        /// Rate the filter was designed for.
        design: f64,
        /// Rate of the series.
        series: f64,
    },
    /// Series too short for the requested operation.
    SeriesTooShort {
        /// Number of samples supplied.
        len: usize,
        /// Minimum number required.
        min: usize,
    },
    /// Sweep range is empty or reversed.
    EmptyRange {
        /// Range start.
        from: f64,
        /// Range end.
        to: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::NonPositive { name, value } => {
                write!(f, "{name} must be positive and finite, got {value}")
            }
            Error::ResonantMultiple(n) => write!(
                f,
                "resonant multiple: n = {n} must exceed 1 (p = k/n would reach or exceed k)"
            ),
            Error::NonIntegerMultiple(n) => write!(
                f,
                "non-integer multiple: n = {n} is not an integer >= 2; use exploratory mode to plan it anyway"
            ),
            Error::TimeOutOfRange { t, end } => {
                write!(f, "time {t} s lies outside the move interval [0, {end}] s")
            }
            Error::StepTooCoarse { step, max } => {
                write!(f, "integration step {step} s exceeds the limit {max} s")
            }
            Error::IncompleteTrace { covered, required } => write!(
                f,
                "trace ends at {covered} s but must cover the move up to {required} s"
            ),
            Error::ThickSection { width, thickness } => write!(
                f,
                "beam thickness {thickness} m exceeds width {width} m (weak-axis bending expected)"
            ),
            Error::UnsupportedOrder(order) => {
                write!(f, "filter order {order} not supported (use 2, 4, 6 or 8)")
            }
            Error::CutoffAboveNyquist { cutoff, nyquist } => write!(
                f,
                "cutoff {cutoff} Hz must lie below the Nyquist frequency {nyquist} Hz"
            ),
            Error::RateMismatch { design, series } => write!(
                f,
                "series sampled at {series} Hz but the filter was designed for {design} Hz"
            ),
            Error::SeriesTooShort { len, min } => {
                write!(f, "series has {len} samples, at least {min} required")
            }
            Error::EmptyRange { from, to } => write!(f, "empty range [{from}, {to}]"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
