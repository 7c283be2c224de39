use alloc::vec::Vec;

use crate::error::{positive, Error, Result};

/// Uniformly sampled scalar signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    rate: f64,
    start: f64,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series with sample rate `rate` [Hz] whose first sample sits at `start`.
    pub fn new(rate: f64, start: f64, values: Vec<f64>) -> Result<Self> {
        positive("sample rate", rate)?;
        if values.len() < 2 {
            return Err(Error::SeriesTooShort {
                len: values.len(),
                min: 2,
            });
        }
        Ok(TimeSeries {
            rate,
            start,
            values,
        })
    }

    /// Samples per second.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Time of the first sample.
    pub fn start(&self) -> f64 {
        self.start
    }

    /// Sample spacing.
    pub fn step(&self) -> f64 {
        1.0 / self.rate
    }

    /// Time stamp of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.start + i as f64 / self.rate
    }

    /// Time stamp of the last sample.
    pub fn end(&self) -> f64 {
        self.time(self.values.len() - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; a series holds at least two samples.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(t, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.time(i), v))
    }

    /// Same time base, new values.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> Self {
        TimeSeries {
            rate: self.rate,
            start: self.start,
            values,
        }
    }
}
