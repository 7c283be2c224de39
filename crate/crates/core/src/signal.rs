//! Butterworth lowpass design as cascaded biquads and zero-phase
//! forward-backward filtering.

use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{atan2, cos, sin, sqrt, tan};

use crate::error::{positive, Error, Result};
use crate::series::TimeSeries;

/// One second-order section `(b₀ + b₁z⁻¹ + b₂z⁻²)/(1 + a₁z⁻¹ + a₂z⁻²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub a1: f64,
    pub a2: f64,
}

impl Section {
    /// Gain at `z = 1`.
    pub fn dc_gain(&self) -> f64 {
        (self.b0 + self.b1 + self.b2) / (1.0 + self.a1 + self.a2)
    }

    /// Both poles strictly inside the unit circle (stability triangle).
    pub fn is_stable(&self) -> bool {
        self.a2.abs() < 1.0 && self.a1.abs() < 1.0 + self.a2
    }

    /// Complex response at normalized angular frequency `w` (rad/sample).
    fn response(&self, w: f64) -> (f64, f64) {
        // e^{-jw}, e^{-2jw}
        let (c1, s1) = (cos(w), -sin(w));
        let (c2, s2) = (cos(2.0 * w), -sin(2.0 * w));
        let num = (
            self.b0 + self.b1 * c1 + self.b2 * c2,
            self.b1 * s1 + self.b2 * s2,
        );
        let den = (
            1.0 + self.a1 * c1 + self.a2 * c2,
            self.a1 * s1 + self.a2 * s2,
        );
        let d = den.0 * den.0 + den.1 * den.1;
        (
            (num.0 * den.0 + num.1 * den.1) / d,
            (num.1 * den.0 - num.0 * den.1) / d,
        )
    }

    /// Steady-state delay line for a unit step input (transposed direct form II).
    fn step_state(&self) -> [f64; 2] {
        let g = self.dc_gain();
        let z2 = self.b2 - self.a2 * g;
        [self.b1 - self.a1 * g + z2, z2]
    }
}

/// Digital Butterworth lowpass realized as `order/2` biquads.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterDesign {
    order: u32,
    cutoff: f64,
    rate: f64,
    sections: Vec<Section>,
}

/// Lowpass Butterworth of even `order` ∈ {2, 4, 6, 8} with `cutoff` [Hz]
/// for data sampled at `rate` [Hz], via the prewarped bilinear transform.
///
/// Sections are ordered by increasing pole quality factor, each with unit
/// DC gain.
pub fn design_butterworth(order: u32, cutoff: f64, rate: f64) -> Result<FilterDesign> {
    if !matches!(order, 2 | 4 | 6 | 8) {
        return Err(Error::UnsupportedOrder(order));
    }
    positive("cutoff frequency", cutoff)?;
    positive("sample rate", rate)?;
    let nyquist = rate / 2.0;
    if cutoff >= nyquist {
        return Err(Error::CutoffAboveNyquist { cutoff, nyquist });
    }

    let warped = tan(PI * cutoff / rate);
    let w2 = warped * warped;
    let pairs = order / 2;
    let sections = (0..pairs)
        .rev()
        .map(|i| {
            // analog pole pair at angle π(2i+1)/(2N) from the imaginary axis
            let damping = 2.0 * sin(PI * f64::from(2 * i + 1) / f64::from(2 * order));
            let norm = 1.0 / (1.0 + damping * warped + w2);
            let b0 = w2 * norm;
            Section {
                b0,
                b1: 2.0 * b0,
                b2: b0,
                a1: 2.0 * (w2 - 1.0) * norm,
                a2: (1.0 - damping * warped + w2) * norm,
            }
        })
        .collect();
    Ok(FilterDesign {
        order,
        cutoff,
        rate,
        sections,
    })
}

impl FilterDesign {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Cutoff frequency [Hz].
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Design sample rate [Hz].
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    /// Odd-extension length used by [`filtfilt`] at each end: `3·order`.
    pub fn pad_len(&self) -> usize {
        3 * self.order as usize
    }

    /// Cascade response at `freq` [Hz] as `(re, im)`.
    pub fn response(&self, freq: f64) -> (f64, f64) {
        let w = 2.0 * PI * freq / self.rate;
        self.sections.iter().fold((1.0, 0.0), |acc, s| {
            let r = s.response(w);
            (acc.0 * r.0 - acc.1 * r.1, acc.0 * r.1 + acc.1 * r.0)
        })
    }

    /// Single-pass magnitude at `freq` [Hz].
    pub fn magnitude(&self, freq: f64) -> f64 {
        let (re, im) = self.response(freq);
        sqrt(re * re + im * im)
    }

    /// Single-pass phase at `freq` [Hz], radians.
    pub fn phase(&self, freq: f64) -> f64 {
        let (re, im) = self.response(freq);
        atan2(im, re)
    }

    /// Cascade gain at DC.
    pub fn dc_gain(&self) -> f64 {
        self.sections.iter().map(Section::dc_gain).product()
    }

    /// Causal single pass over `input`, with the delay lines primed to the
    /// steady state of a constant input equal to `input[0]`.
    pub fn filter_primed(&self, input: &[f64]) -> Vec<f64> {
        let mut out = input.to_vec();
        let Some(&first) = input.first() else {
            return out;
        };
        let mut level = first;
        for s in &self.sections {
            let zi = s.step_state();
            let mut z = [zi[0] * level, zi[1] * level];
            for x in out.iter_mut() {
                let y = s.b0 * *x + z[0];
                z[0] = s.b1 * *x - s.a1 * y + z[1];
                z[1] = s.b2 * *x - s.a2 * y;
                *x = y;
            }
            level *= s.dc_gain();
        }
        out
    }
}

/// Zero-phase filtering: forward pass, then a pass over the reversed
/// result, with odd extension of `3·order` samples at both ends.
///
/// The effective magnitude response is the square of the single-pass one.
pub fn filtfilt(design: &FilterDesign, series: &TimeSeries) -> Result<TimeSeries> {
    if (series.rate() - design.rate()).abs() > 1e-9 * design.rate() {
        return Err(Error::RateMismatch {
            design: design.rate(),
            series: series.rate(),
        });
    }
    let pad = design.pad_len();
    let x = series.values();
    let n = x.len();
    if n <= pad {
        return Err(Error::SeriesTooShort {
            len: n,
            min: pad + 1,
        });
    }

    let mut ext = Vec::with_capacity(n + 2 * pad);
    ext.extend((1..=pad).rev().map(|i| 2.0 * x[0] - x[i]));
    ext.extend_from_slice(x);
    ext.extend((1..=pad).map(|i| 2.0 * x[n - 1] - x[n - 1 - i]));

    let mut y = design.filter_primed(&ext);
    y.reverse();
    let mut y = design.filter_primed(&y);
    y.reverse();
    Ok(series.with_values(y[pad..pad + n].to_vec()))
}
