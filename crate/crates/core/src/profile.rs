//! The frequency-matched motion law.
//!
//! For a move of length `L` carried out over `t₁ = n·t_c` (with `t_c = 2π/k`
//! the payload's natural period) the carried frame follows
//!
//! ```text
//! s(t) = L/(2π) · (p·t − sin(p·t))
//! v(t) = L·p/(2π) · (1 − cos(p·t))
//! a(t) = L·p²/(2π) · sin(p·t)          p = k/n = 2π/t₁
//! ```
//!
//! The acceleration is one full sine period, skew-symmetric about `t₁/2`,
//! and it starts and ends at zero. When `n` is an integer the relative
//! oscillation it excites has zero displacement and velocity at `t₁`.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use libm::{cos, floor, round, sin};

use crate::error::{positive, Error, Result};
use crate::quad::simpson;

/// Validation regime for the period multiple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `n` must be an integer `≥ 2`; plans built this way end in quiescence.
    Strict,
    /// Any real `n > 1`; used for sweeps and unmatched comparisons. Plans
    /// built this way are never reported as quiescent.
    Exploratory,
}

/// A planning problem: move a payload of mass `m` by `L` when its relative
/// oscillation has natural frequency `k`, taking `n` natural periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionSpec {
    length: f64,
    frequency: f64,
    multiple: f64,
    mass: f64,
    mode: Mode,
}

/// One point of the motion law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionSample {
    /// Time [s].
    pub t: f64,
    /// Position [m].
    pub s: f64,
    /// Velocity [m/s].
    pub v: f64,
    /// Acceleration [m/s²].
    pub a: f64,
}

/// Quadrature values of the four moment integrals over `[0, t₁]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    /// `∫ a dt`; zero means the move ends at rest.
    pub drift: f64,
    /// `∫ v dt`; equals `L`.
    pub travel: f64,
    /// `∫ a·cos(k·t) dt`.
    pub cos_moment: f64,
    /// `∫ a·sin(k·t) dt`.
    pub sin_moment: f64,
}

impl MotionSpec {
    /// Validates the inputs and builds a spec.
    ///
    /// `length` [m], `frequency` `k` [rad/s], `multiple` `n`, `mass` [kg].
    pub fn new(length: f64, frequency: f64, multiple: f64, mass: f64, mode: Mode) -> Result<Self> {
        positive("displacement L", length)?;
        positive("natural frequency k", frequency)?;
        positive("mass m", mass)?;
        if !multiple.is_finite() || multiple <= 1.0 {
            return Err(Error::ResonantMultiple(multiple));
        }
        let multiple = match mode {
            Mode::Strict => {
                let nearest = round(multiple);
                if multiple != nearest {
                    return Err(Error::NonIntegerMultiple(multiple));
                }
                nearest
            }
            Mode::Exploratory => multiple,
        };
        Ok(MotionSpec {
            length,
            frequency,
            multiple,
            mass,
            mode,
        })
    }

    /// Strict spec; shorthand for [`MotionSpec::new`] with [`Mode::Strict`].
    pub fn strict(length: f64, frequency: f64, multiple: u32, mass: f64) -> Result<Self> {
        Self::new(length, frequency, f64::from(multiple), mass, Mode::Strict)
    }

    /// Overall displacement `L` [m].
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Natural frequency `k` [rad/s].
    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Period multiple `n = t₁/t_c`.
    pub fn multiple(&self) -> f64 {
        self.multiple
    }

    /// Payload mass [kg].
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// True only for strict specs. Exploratory specs carry no quiescence
    /// guarantee even when `n` happens to be integral.
    pub fn guarantees_quiescence(&self) -> bool {
        self.mode == Mode::Strict
    }

    /// Forcing frequency `p = k/n` [rad/s].
    pub fn forcing_frequency(&self) -> f64 {
        self.frequency / self.multiple
    }

    /// Move duration `t₁ = 2π/p`.
    pub fn duration(&self) -> f64 {
        TAU / self.forcing_frequency()
    }

    /// Natural period `t_c = 2π/k`.
    pub fn natural_period(&self) -> f64 {
        TAU / self.frequency
    }

    /// Peak acceleration `L·p²/(2π)`, the amplitude of the sine control.
    pub fn control_amplitude(&self) -> f64 {
        let p = self.forcing_frequency();
        self.length * p * p / TAU
    }

    /// Peak velocity `L·p/π`, reached at `t₁/2`.
    pub fn peak_velocity(&self) -> f64 {
        self.length * self.forcing_frequency() / PI
    }

    /// Relative quiescence tolerance default, `10⁻⁶·L`.
    pub fn default_tolerance(&self) -> f64 {
        1e-6 * self.length
    }

    /// Default quadrature step, `t₁/10⁵`.
    pub fn default_quadrature_step(&self) -> f64 {
        self.duration() / 1e5
    }

    fn check_time(&self, t: f64) -> Result<()> {
        let end = self.duration();
        if (0.0..=end).contains(&t) {
            Ok(())
        } else {
            Err(Error::TimeOutOfRange { t, end })
        }
    }

    /// Position `s(t)`.
    pub fn position(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.position_unchecked(t))
    }

    /// Velocity `v(t)`; never negative.
    pub fn velocity(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.velocity_unchecked(t))
    }

    /// Acceleration (control) `a(t)`.
    pub fn acceleration(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.acceleration_unchecked(t))
    }

    /// All three laws at `t`.
    pub fn sample(&self, t: f64) -> Result<MotionSample> {
        self.check_time(t)?;
        Ok(self.sample_unchecked(t))
    }

    pub(crate) fn position_unchecked(&self, t: f64) -> f64 {
        let p = self.forcing_frequency();
        self.length / TAU * (p * t - sin(p * t))
    }

    pub(crate) fn velocity_unchecked(&self, t: f64) -> f64 {
        let p = self.forcing_frequency();
        self.length * p / TAU * (1.0 - cos(p * t))
    }

    pub(crate) fn acceleration_unchecked(&self, t: f64) -> f64 {
        self.control_amplitude() * sin(self.forcing_frequency() * t)
    }

    pub(crate) fn sample_unchecked(&self, t: f64) -> MotionSample {
        MotionSample {
            t,
            s: self.position_unchecked(t),
            v: self.velocity_unchecked(t),
            a: self.acceleration_unchecked(t),
        }
    }

    /// Number of samples [`sample_uniform`](Self::sample_uniform) produces:
    /// `floor(rate·t₁) + 1`.
    pub fn sample_count(&self, rate: f64) -> Result<usize> {
        positive("sample rate", rate)?;
        Ok(floor(rate * self.duration()) as usize + 1)
    }

    /// Setpoint table at `rate` samples per second starting at `t = 0`.
    pub fn sample_uniform(&self, rate: f64) -> Result<Vec<MotionSample>> {
        let count = self.sample_count(rate)?;
        Ok((0..count)
            .map(|i| self.sample_unchecked(i as f64 / rate))
            .collect())
    }

    /// Composite Simpson values of the moment integrals with the given step.
    pub fn moment_integrals(&self, step: f64) -> Result<Moments> {
        positive("quadrature step", step)?;
        let end = self.duration();
        let k = self.frequency;
        Ok(Moments {
            drift: simpson(|t| self.acceleration_unchecked(t), 0.0, end, step),
            travel: simpson(|t| self.velocity_unchecked(t), 0.0, end, step),
            cos_moment: simpson(
                |t| self.acceleration_unchecked(t) * cos(k * t),
                0.0,
                end,
                step,
            ),
            sin_moment: simpson(
                |t| self.acceleration_unchecked(t) * sin(k * t),
                0.0,
                end,
                step,
            ),
        })
    }
}

/// Residuals `(cos(2πn) − 1, sin(2πn))` of the timing equations.
///
/// Both vanish exactly for integer `n`; the angle is reduced to `2π·frac(n)`
/// before evaluation.
pub fn timing_residual(multiple: f64) -> (f64, f64) {
    let angle = TAU * (multiple - floor(multiple));
    (cos(angle) - 1.0, sin(angle))
}
