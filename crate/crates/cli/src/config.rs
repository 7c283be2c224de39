//! Run configuration: a JSON document and command-line flags, merged with
//! flags taking precedence.
//!
//! ```json
//! {
//!   "L": 0.41, "n": 2, "rate": 1500,
//!   "beam": { "l": 0.305, "b": 0.013, "h": 0.0005, "E": 2.1e11, "m_tip": 0.09 },
//!   "order": 4, "cutoff_hz": 20
//! }
//! ```
//!
//! `beam` may also be a path to a JSON file holding the beam object,
//! resolved relative to the configuration file.

use std::fs;
use std::path::{Path, PathBuf};

use flexmove_core::beam::BeamSpec;
use flexmove_core::profile::Mode;
use flexmove_core::MotionSpec;
use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_RATE: f64 = 1500.0;
pub const DEFAULT_ORDER: u32 = 4;
pub const DEFAULT_CUTOFF_HZ: f64 = 20.0;
/// Payload mass used when only a direct `k` is given; the motion law itself
/// does not depend on it.
pub const DEFAULT_MASS: f64 = 1.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: invalid JSON: {source}", path.display())]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("missing required parameter `{0}`")]
    Missing(&'static str),
    #[error("give exactly one frequency source: either k or a beam, not both")]
    ConflictingFrequency,
    #[error("no frequency source: give k or a beam description")]
    NoFrequency,
    #[error("{name} must be a positive integer, got {value}")]
    NotAnInteger { name: &'static str, value: f64 },
    #[error("invalid beam: {0}")]
    Beam(flexmove_core::Error),
}

impl ConfigError {
    pub fn is_io(&self) -> bool {
        matches!(self, ConfigError::Io { .. })
    }
}

/// Beam description as stored in JSON, SI units.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamFile {
    pub l: f64,
    pub b: f64,
    pub h: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub m_tip: f64,
}

impl BeamFile {
    pub fn to_spec(self) -> Result<BeamSpec, ConfigError> {
        BeamSpec::new(self.l, self.b, self.h, self.e, self.m_tip).map_err(ConfigError::Beam)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        read_json(path)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum BeamSource {
    Inline(BeamFile),
    File(PathBuf),
}

impl BeamSource {
    pub fn resolve(&self) -> Result<BeamFile, ConfigError> {
        match self {
            BeamSource::Inline(b) => Ok(*b),
            BeamSource::File(path) => BeamFile::load(path),
        }
    }
}

/// Every tunable, all optional. Produced from a JSON file or from flags.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    #[serde(rename = "L")]
    pub length: Option<f64>,
    pub k: Option<f64>,
    pub n: Option<f64>,
    #[serde(alias = "m")]
    pub mass: Option<f64>,
    pub beam: Option<BeamSource>,
    pub exploratory: Option<bool>,
    pub rate: Option<f64>,
    /// RK4 step for `simulate` [s].
    pub dt: Option<f64>,
    /// Absolute quiescence tolerance [m]; defaults to 1e-6·L.
    pub tolerance: Option<f64>,
    pub n_from: Option<f64>,
    pub n_to: Option<f64>,
    /// Sweep increment in `n`.
    pub step: Option<f64>,
    pub order: Option<u32>,
    pub cutoff_hz: Option<f64>,
    pub masses: Option<Vec<f64>>,
    pub unmatched_n: Option<f64>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Where the natural frequency comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrequencySource {
    Direct(f64),
    Beam(BeamSpec),
}

impl Settings {
    /// Reads a JSON configuration; a relative beam path is taken relative
    /// to the file's directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let mut settings: Settings = read_json(path)?;
        if let Some(BeamSource::File(beam)) = &mut settings.beam {
            if beam.is_relative() {
                if let Some(dir) = path.parent() {
                    *beam = dir.join(&*beam);
                }
            }
        }
        Ok(settings)
    }

    /// `self` (flags) over `base` (file). The frequency source is taken as a
    /// unit: if the flags name one, the file's is ignored.
    pub fn over(self, base: Settings) -> Settings {
        let flags_have_frequency = self.k.is_some() || self.beam.is_some();
        let (k, beam) = if flags_have_frequency {
            (self.k, self.beam)
        } else {
            (base.k, base.beam)
        };
        Settings {
            length: self.length.or(base.length),
            k,
            n: self.n.or(base.n),
            mass: self.mass.or(base.mass),
            beam,
            exploratory: self.exploratory.or(base.exploratory),
            rate: self.rate.or(base.rate),
            dt: self.dt.or(base.dt),
            tolerance: self.tolerance.or(base.tolerance),
            n_from: self.n_from.or(base.n_from),
            n_to: self.n_to.or(base.n_to),
            step: self.step.or(base.step),
            order: self.order.or(base.order),
            cutoff_hz: self.cutoff_hz.or(base.cutoff_hz),
            masses: self.masses.or(base.masses),
            unmatched_n: self.unmatched_n.or(base.unmatched_n),
        }
    }

    pub fn require_length(&self) -> Result<f64, ConfigError> {
        self.length.ok_or(ConfigError::Missing("L"))
    }

    pub fn require_multiple(&self) -> Result<f64, ConfigError> {
        self.n.ok_or(ConfigError::Missing("n"))
    }

    pub fn mode(&self) -> Mode {
        if self.exploratory.unwrap_or(false) {
            Mode::Exploratory
        } else {
            Mode::Strict
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate.unwrap_or(DEFAULT_RATE)
    }

    pub fn beam(&self) -> Result<Option<BeamSpec>, ConfigError> {
        self.beam
            .as_ref()
            .map(|b| b.resolve()?.to_spec())
            .transpose()
    }

    /// Exactly one of `k` and `beam` must be present.
    pub fn frequency_source(&self) -> Result<FrequencySource, ConfigError> {
        match (self.k, self.beam()?) {
            (Some(_), Some(_)) => Err(ConfigError::ConflictingFrequency),
            (None, None) => Err(ConfigError::NoFrequency),
            (Some(k), None) => Ok(FrequencySource::Direct(k)),
            (None, Some(beam)) => Ok(FrequencySource::Beam(beam)),
        }
    }

    /// `(k, m)`: with a beam the mass (flag or `m_tip`) loads the beam tip.
    pub fn frequency_and_mass(&self) -> Result<(f64, f64), crate::CliError> {
        Ok(match self.frequency_source()? {
            FrequencySource::Direct(k) => (k, self.mass.unwrap_or(DEFAULT_MASS)),
            FrequencySource::Beam(beam) => {
                let beam = match self.mass {
                    Some(m) => beam.with_tip_mass(m)?,
                    None => beam,
                };
                (beam.natural_frequency()?, beam.tip_mass)
            }
        })
    }

    pub fn motion_spec(&self) -> Result<MotionSpec, crate::CliError> {
        let length = self.require_length()?;
        let n = self.require_multiple()?;
        let (k, m) = self.frequency_and_mass()?;
        Ok(MotionSpec::new(length, k, n, m, self.mode())?)
    }

    pub fn order(&self) -> u32 {
        self.order.unwrap_or(DEFAULT_ORDER)
    }

    pub fn cutoff_hz(&self) -> f64 {
        self.cutoff_hz.unwrap_or(DEFAULT_CUTOFF_HZ)
    }
}
