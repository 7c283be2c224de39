//! Relative oscillation of the payload, the action functional and
//! end-of-move residual reports.
//!
//! In the carried frame the payload obeys `ẍ + k²·x = −u(t)`, with `u` the
//! frame's acceleration and zero initial state. [`relative_closed_form`]
//! evaluates the exact solution for the sine control; [`integrate`] runs a
//! fixed-step RK4 on the same equation for arbitrary forcing and serves as
//! an independent check of the closed form.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use libm::{ceil, cos, floor, round, sin, sqrt};

use crate::error::{positive, Error, Result};
use crate::profile::MotionSpec;
use crate::quad::simpson;
use crate::series::TimeSeries;

/// Relative displacement and velocity at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OscillatorState {
    /// `x_r` [m].
    pub displacement: f64,
    /// `v_r` [m/s].
    pub velocity: f64,
}

impl OscillatorState {
    pub const REST: OscillatorState = OscillatorState {
        displacement: 0.0,
        velocity: 0.0,
    };

    pub fn new(displacement: f64, velocity: f64) -> Self {
        OscillatorState {
            displacement,
            velocity,
        }
    }

    fn axpy(self, h: f64, d: OscillatorState) -> Self {
        OscillatorState {
            displacement: self.displacement + h * d.displacement,
            velocity: self.velocity + h * d.velocity,
        }
    }
}

/// Relative displacement, velocity and acceleration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeMotion {
    /// `x_r` [m].
    pub displacement: f64,
    /// `v_r` [m/s].
    pub velocity: f64,
    /// `a_r` [m/s²].
    pub acceleration: f64,
}

/// Exact relative motion under the sine control at `t ∈ [0, t₁]`.
pub fn relative_closed_form(spec: &MotionSpec, t: f64) -> Result<RelativeMotion> {
    spec.position(t)?;
    Ok(relative_unchecked(spec, t))
}

pub(crate) fn relative_unchecked(spec: &MotionSpec, t: f64) -> RelativeMotion {
    let k = spec.frequency();
    let p = spec.forcing_frequency();
    let scale = spec.length() * p * p / (TAU * (k * k - p * p));
    let (sk, ck) = (sin(k * t), cos(k * t));
    let (sp, cp) = (sin(p * t), cos(p * t));
    RelativeMotion {
        displacement: scale * (p / k * sk - sp),
        velocity: scale * p * (ck - cp),
        acceleration: scale * p * (p * sp - k * sk),
    }
}

/// Right-hand side of `ẍ + k²·x = −u(t)` as a first-order system.
pub fn oscillator_derivative<F>(
    frequency: f64,
    forcing: &F,
    state: OscillatorState,
    t: f64,
) -> OscillatorState
where
    F: Fn(f64) -> f64 + ?Sized,
{
    OscillatorState {
        displacement: state.velocity,
        velocity: -frequency * frequency * state.displacement - forcing(t),
    }
}

/// Uniform-step sequence of oscillator states starting at `t = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateTrace {
    step: f64,
    states: Vec<OscillatorState>,
}

impl StateTrace {
    /// Actual step used (the requested step shrunk so the trace ends on `t_end`).
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn states(&self) -> &[OscillatorState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.time(self.states.len() - 1)
    }

    pub fn last(&self) -> OscillatorState {
        self.states[self.states.len() - 1]
    }

    /// `(t, state)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, OscillatorState)> + '_ {
        self.states
            .iter()
            .enumerate()
            .map(move |(i, &s)| (self.time(i), s))
    }

    /// Relative accelerations recovered from the equation of motion.
    pub fn accelerations<F>(&self, frequency: f64, forcing: &F) -> Vec<f64>
    where
        F: Fn(f64) -> f64 + ?Sized,
    {
        self.iter()
            .map(|(t, s)| oscillator_derivative(frequency, forcing, s, t).velocity)
            .collect()
    }
}

/// Integrates the oscillator from rest over `[0, t_end]` with classical RK4.
///
/// `step` must not exceed `(2π/k)/50`. The step is shrunk slightly when
/// `t_end` is not a multiple of it, so the last state sits exactly at `t_end`.
pub fn integrate<F>(frequency: f64, forcing: &F, t_end: f64, step: f64) -> Result<StateTrace>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    integrate_from(frequency, forcing, OscillatorState::REST, t_end, step)
}

/// [`integrate`] from an arbitrary initial state.
pub fn integrate_from<F>(
    frequency: f64,
    forcing: &F,
    initial: OscillatorState,
    t_end: f64,
    step: f64,
) -> Result<StateTrace>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    positive("natural frequency k", frequency)?;
    positive("integration span", t_end)?;
    positive("integration step", step)?;
    let max = TAU / frequency / 50.0;
    if step > max {
        return Err(Error::StepTooCoarse { step, max });
    }
    let count = ceil(t_end / step * (1.0 - 1e-12)) as usize;
    let h = t_end / count as f64;
    let deriv = |s, t| oscillator_derivative(frequency, forcing, s, t);

    let mut states = Vec::with_capacity(count + 1);
    let mut state = initial;
    states.push(state);
    for i in 0..count {
        let t = i as f64 * h;
        let k1 = deriv(state, t);
        let k2 = deriv(state.axpy(h / 2.0, k1), t + h / 2.0);
        let k3 = deriv(state.axpy(h / 2.0, k2), t + h / 2.0);
        let k4 = deriv(state.axpy(h, k3), t + h);
        state = OscillatorState {
            displacement: state.displacement
                + h / 6.0
                    * (k1.displacement
                        + 2.0 * k2.displacement
                        + 2.0 * k3.displacement
                        + k4.displacement),
            velocity: state.velocity
                + h / 6.0 * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity + k4.velocity),
        };
        states.push(state);
    }
    Ok(StateTrace { step: h, states })
}

/// RK4 trace of the payload under the planned control over `[0, t₁]`.
pub fn integrate_motion(spec: &MotionSpec, step: f64) -> Result<StateTrace> {
    let forcing = |t: f64| spec.acceleration_unchecked(t);
    integrate(spec.frequency(), &forcing, spec.duration(), step)
}

/// Where the end-of-move relative state comes from.
#[derive(Debug, Clone, Copy)]
pub enum ResidualSource<'a> {
    /// Exact solution at `t₁`.
    ClosedForm,
    /// A simulated trace covering `[0, t₁]`.
    Trace(&'a StateTrace),
}

/// End-of-move quiescence metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Relative displacement at `t₁` [m].
    pub x_end: f64,
    /// Relative velocity at `t₁` [m/s].
    pub v_end: f64,
    /// Amplitude of the free oscillation left after the move,
    /// `√(x_end² + (v_end/k)²)` [m].
    pub amplitude: f64,
    /// Amplitude threshold the quiescence flag was judged against [m].
    pub tolerance: f64,
    /// Strict plan and amplitude within tolerance.
    pub quiescent: bool,
    /// Action of the planned translational motion [J·s].
    pub action: f64,
}

/// Residual phasor amplitude of a free undamped oscillator.
pub fn phasor_amplitude(state: OscillatorState, frequency: f64) -> f64 {
    let scaled = state.velocity / frequency;
    sqrt(state.displacement * state.displacement + scaled * scaled)
}

/// Builds the residual report at `t₁`.
///
/// Exploratory specs are never flagged quiescent, whatever the amplitude.
pub fn residual_report(
    spec: &MotionSpec,
    source: ResidualSource<'_>,
    tolerance: f64,
) -> Result<ResidualReport> {
    positive("quiescence tolerance", tolerance)?;
    let end = spec.duration();
    let state = match source {
        ResidualSource::ClosedForm => {
            let r = relative_unchecked(spec, end);
            OscillatorState::new(r.displacement, r.velocity)
        }
        ResidualSource::Trace(trace) => {
            let covered = if trace.is_empty() { 0.0 } else { trace.end() };
            if trace.len() < 2 || covered < end * (1.0 - 1e-9) {
                return Err(Error::IncompleteTrace {
                    covered,
                    required: end,
                });
            }
            let i = round(end / trace.step()) as usize;
            if (trace.time(i) - end).abs() > 1e-9 * end {
                // t₁ falls between samples; the trace cannot report it
                return Err(Error::IncompleteTrace {
                    covered: trace.time(floor(end / trace.step()) as usize),
                    required: end,
                });
            }
            trace.states()[i]
        }
    };
    let amplitude = phasor_amplitude(state, spec.frequency());
    Ok(ResidualReport {
        x_end: state.displacement,
        v_end: state.velocity,
        amplitude,
        tolerance,
        quiescent: spec.guarantees_quiescence() && amplitude <= tolerance,
        action: optimal_action(spec, spec.default_quadrature_step()),
    })
}

/// Emulated accelerometer signal at the payload: `u(t) + a_r(t)` sampled
/// at `rate` over `[0, t₁]`.
pub fn tip_trace(spec: &MotionSpec, rate: f64) -> Result<TimeSeries> {
    let count = spec.sample_count(rate)?;
    let values = (0..count)
        .map(|i| {
            let t = i as f64 / rate;
            spec.acceleration_unchecked(t) + relative_unchecked(spec, t).acceleration
        })
        .collect();
    TimeSeries::new(rate, 0.0, values)
}

/// Absolute payload position `s(t) + x_r(t)` sampled at `rate`.
pub fn tip_position_trace(spec: &MotionSpec, rate: f64) -> Result<TimeSeries> {
    let count = spec.sample_count(rate)?;
    let values = (0..count)
        .map(|i| {
            let t = i as f64 / rate;
            spec.position_unchecked(t) + relative_unchecked(spec, t).displacement
        })
        .collect();
    TimeSeries::new(rate, 0.0, values)
}

/// Action `∫₀^{t₁} (m·v²/2 − m·p²·s²/2 + m·L·p³·t·s/(2π)) dt` of an
/// arbitrary trajectory, by composite Simpson.
///
/// The potential term uses `c/n² = m·p²` with the stiffness recovered as
/// `c = m·k²`.
pub fn action_value<S, V>(spec: &MotionSpec, position: S, velocity: V, step: f64) -> f64
where
    S: Fn(f64) -> f64,
    V: Fn(f64) -> f64,
{
    let m = spec.mass();
    let p = spec.forcing_frequency();
    let work = m * spec.length() * p * p * p / TAU;
    simpson(
        |t| {
            let s = position(t);
            let v = velocity(t);
            0.5 * m * v * v - 0.5 * m * p * p * s * s + work * t * s
        },
        0.0,
        spec.duration(),
        step,
    )
}

/// Action of the planned motion law.
pub fn optimal_action(spec: &MotionSpec, step: f64) -> f64 {
    action_value(
        spec,
        |t| spec.position_unchecked(t),
        |t| spec.velocity_unchecked(t),
        step,
    )
}

/// Euler–Lagrange residual `s̈ + p²·s − L·p³·t/(2π)` of the planned law.
pub fn euler_residual(spec: &MotionSpec, t: f64) -> Result<f64> {
    spec.position(t)?;
    Ok(euler_residual_of(
        spec,
        |t| spec.position_unchecked(t),
        |t| spec.acceleration_unchecked(t),
        t,
    ))
}

/// Euler–Lagrange residual of an arbitrary trajectory given its position
/// and acceleration.
pub fn euler_residual_of<S, A>(spec: &MotionSpec, position: S, acceleration: A, t: f64) -> f64
where
    S: Fn(f64) -> f64,
    A: Fn(f64) -> f64,
{
    let p = spec.forcing_frequency();
    acceleration(t) + p * p * position(t) - spec.length() * p * p * p * t / TAU
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Mode;

    fn reference() -> MotionSpec {
        MotionSpec::strict(0.41, 5.78, 2, 0.09).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let spec = reference();
        let end = spec.duration();
        let r = relative_closed_form(&spec, end).unwrap();
        assert!(r.displacement.abs() < 1e-15);
        assert!(r.velocity.abs() < 1e-15);
        assert!(r.acceleration.abs() < 1e-14);
        let r = relative_closed_form(&spec, end / 2.0).unwrap();
        assert!(r.displacement.abs() < 1e-15);
        let r = relative_closed_form(&spec, end / 4.0).unwrap();
        let expected = -0.41 * 2.89 * 2.89 / (TAU * (5.78 * 5.78 - 2.89 * 2.89));
        assert!((r.displacement - expected).abs() < 1e-15);
        assert!((r.displacement + 0.02175).abs() < 5e-6);
        assert!(relative_closed_form(&spec, -0.1).is_err());
    }

    #[test]
    fn closed_form_solves_the_ode() {
        let spec = reference();
        let k = spec.frequency();
        for i in 0..=20 {
            let t = spec.duration() * i as f64 / 20.0;
            let r = relative_closed_form(&spec, t).unwrap();
            let lhs = r.acceleration + k * k * r.displacement;
            let rhs = -spec.acceleration(t).unwrap();
            assert!((lhs - rhs).abs() < 1e-14, "t = {t}");
        }
    }

    #[test]
    fn derivative_examples() {
        let zero = |_t: f64| 0.0;
        assert_eq!(
            oscillator_derivative(3.0, &zero, OscillatorState::REST, 0.5),
            OscillatorState::REST
        );
        let d = oscillator_derivative(3.0, &zero, OscillatorState::new(0.2, 0.0), 0.0);
        assert_eq!(d, OscillatorState::new(0.0, -9.0 * 0.2));
        let push = |_t: f64| 0.7;
        let d = oscillator_derivative(3.0, &push, OscillatorState::REST, 1e-3);
        assert_eq!(d, OscillatorState::new(0.0, -0.7));
    }

    #[test]
    fn rk4_matches_closed_form() {
        let spec = reference();
        let end = spec.duration();
        let trace = integrate_motion(&spec, end / 2e4).unwrap();
        assert_eq!(trace.len(), 20_001);
        assert!((trace.end() - end).abs() < 1e-12);
        assert!(trace.last().displacement.abs() <= 1e-8);
        for (t, s) in trace.iter().step_by(97) {
            let r = relative_unchecked(&spec, t);
            assert!((s.displacement - r.displacement).abs() <= 1e-8);
        }
    }

    #[test]
    fn rk4_zero_forcing_stays_at_rest() {
        let trace = integrate(4.0, &|_t: f64| 0.0, 3.0, 1e-3).unwrap();
        assert!(trace.states().iter().all(|s| *s == OscillatorState::REST));
    }

    #[test]
    fn rk4_free_oscillation() {
        let k = 7.3;
        let x0 = 0.05;
        let period = TAU / k;
        let trace = integrate_from(
            k,
            &|_t: f64| 0.0,
            OscillatorState::new(x0, 0.0),
            period,
            period / 2000.0,
        )
        .unwrap();
        for (t, s) in trace.iter() {
            assert!((s.displacement - x0 * cos(k * t)).abs() <= 1e-8 * x0);
        }
    }

    #[test]
    fn rk4_rejects_coarse_step() {
        let err = integrate(10.0, &|_t: f64| 0.0, 1.0, 0.02).unwrap_err();
        assert!(matches!(err, Error::StepTooCoarse { .. }));
    }

    #[test]
    fn report_strict_is_quiescent() {
        let spec = reference();
        let r =
            residual_report(&spec, ResidualSource::ClosedForm, spec.default_tolerance()).unwrap();
        assert!(r.quiescent);
        assert!(r.amplitude <= 1e-6 * 0.41);
        assert!(r.amplitude >= r.x_end.abs());
    }

    #[test]
    fn report_exploratory_is_not_quiescent() {
        let spec = MotionSpec::new(0.41, 5.78, 2.5, 0.09, Mode::Exploratory).unwrap();
        let r =
            residual_report(&spec, ResidualSource::ClosedForm, spec.default_tolerance()).unwrap();
        assert!(!r.quiescent);
        // kt₁ = 5π: x_end vanishes, v_end = −2·L·p³/(2π(k²−p²))
        let p = spec.forcing_frequency();
        let k = spec.frequency();
        let v = -2.0 * 0.41 * p * p * p / (TAU * (k * k - p * p));
        assert!((r.v_end - v).abs() < 1e-15);
        assert!((r.amplitude - v.abs() / k).abs() < 1e-15);
        assert!((r.amplitude - 0.009_943_394_539_836_512).abs() < 1e-14);

        let far = MotionSpec::new(0.41, 5.78, 10.5, 0.09, Mode::Exploratory).unwrap();
        let r_far =
            residual_report(&far, ResidualSource::ClosedForm, far.default_tolerance()).unwrap();
        assert!(r_far.amplitude < r.amplitude);
        assert!(r_far.amplitude > r_far.tolerance);
    }

    #[test]
    fn exploratory_integer_multiple_never_quiescent() {
        let spec = MotionSpec::new(0.41, 5.78, 3.0, 0.09, Mode::Exploratory).unwrap();
        let r =
            residual_report(&spec, ResidualSource::ClosedForm, spec.default_tolerance()).unwrap();
        assert!(r.amplitude <= r.tolerance);
        assert!(!r.quiescent);
    }

    #[test]
    fn report_from_trace() {
        let spec = reference();
        let trace = integrate_motion(&spec, spec.duration() / 2e4).unwrap();
        let r = residual_report(
            &spec,
            ResidualSource::Trace(&trace),
            spec.default_tolerance(),
        )
        .unwrap();
        assert!(r.quiescent);

        let short = integrate(
            spec.frequency(),
            &|t| spec.acceleration_unchecked(t),
            1.0,
            1e-3,
        )
        .unwrap();
        assert!(matches!(
            residual_report(&spec, ResidualSource::Trace(&short), 1e-6),
            Err(Error::IncompleteTrace { .. })
        ));
    }

    #[test]
    fn tip_trace_examples() {
        let spec = reference();
        let trace = tip_trace(&spec, 1500.0).unwrap();
        assert_eq!(trace.values()[0], 0.0);
        for (t, v) in trace.iter() {
            let expected = spec.acceleration(t).unwrap()
                + relative_closed_form(&spec, t).unwrap().acceleration;
            assert_eq!(v, expected);
        }
        // exactly at t₁ the tip is at rest
        let end = spec.duration();
        let at_end = spec.acceleration_unchecked(end) + relative_unchecked(&spec, end).acceleration;
        assert!(at_end.abs() < 1e-14);
        let pos = tip_position_trace(&spec, 1500.0).unwrap();
        assert_eq!(pos.values()[0], 0.0);
    }

    #[test]
    fn action_examples() {
        let spec = reference();
        let step = spec.default_quadrature_step();
        assert_eq!(action_value(&spec, |_| 0.0, |_| 0.0, step), 0.0);
        // frozen from an adaptive Gauss–Kronrod evaluation of the same integral
        let baseline = 0.049_265_770_232_117_98;
        assert!((optimal_action(&spec, step) - baseline).abs() < 1e-12);
    }

    #[test]
    fn euler_residual_examples() {
        let spec = reference();
        let p = spec.forcing_frequency();
        let scale = 0.41 * p * p * p * spec.duration() / TAU;
        assert_eq!(euler_residual(&spec, 0.0).unwrap(), 0.0);
        for i in 0..=50 {
            let t = spec.duration() * i as f64 / 50.0;
            assert!(euler_residual(&spec, t).unwrap().abs() <= 1e-12 * scale);
        }
        let u0 = 0.3;
        let ramp = euler_residual_of(&spec, |t| 0.5 * u0 * t * t, |_| u0, 1.0);
        let expected = u0 + p * p * 0.5 * u0 - 0.41 * p * p * p / TAU;
        assert!((ramp - expected).abs() < 1e-14);
        assert!(ramp.abs() > 1e-3);
    }
}
