//! Lumped model of a rectangular cantilever strip carrying a tip mass.
//!
//! The strip bends about its weak axis and its own mass is neglected, so
//! the payload behaves as a single oscillator with stiffness `c = 3EI/l³`
//! and natural frequency `k = √(c/m)`.

use libm::sqrt;

use crate::error::{positive, Error, Result};

/// Geometry, material and tip mass of a cantilever strip (SI units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    /// Free length `l` [m].
    pub length: f64,
    /// Section width `b` [m].
    pub width: f64,
    /// Section thickness `h` [m].
    pub thickness: f64,
    /// Young's modulus `E` [Pa].
    pub youngs_modulus: f64,
    /// Mass at the free end [kg].
    pub tip_mass: f64,
}

impl BeamSpec {
    pub fn new(
        length: f64,
        width: f64,
        thickness: f64,
        youngs_modulus: f64,
        tip_mass: f64,
    ) -> Result<Self> {
        let beam = BeamSpec {
            length,
            width,
            thickness,
            youngs_modulus,
            tip_mass,
        };
        beam.validate()?;
        Ok(beam)
    }

    /// Checks positivity of every field and `h ≤ b`.
    pub fn validate(&self) -> Result<()> {
        positive("beam length l", self.length)?;
        positive("beam width b", self.width)?;
        positive("beam thickness h", self.thickness)?;
        positive("Young's modulus E", self.youngs_modulus)?;
        positive("tip mass", self.tip_mass)?;
        if self.thickness > self.width {
            return Err(Error::ThickSection {
                width: self.width,
                thickness: self.thickness,
            });
        }
        Ok(())
    }

    /// Same strip, different tip mass.
    pub fn with_tip_mass(&self, tip_mass: f64) -> Result<Self> {
        Self::new(
            self.length,
            self.width,
            self.thickness,
            self.youngs_modulus,
            tip_mass,
        )
    }

    /// Second moment of area of the section [m⁴].
    pub fn area_moment(&self) -> Result<f64> {
        area_moment(self.width, self.thickness)
    }

    /// Tip stiffness `c` [N/m].
    pub fn stiffness(&self) -> Result<f64> {
        tip_stiffness(self.youngs_modulus, self.area_moment()?, self.length)
    }

    /// Natural frequency `k` [rad/s] of the tip mass on the strip.
    pub fn natural_frequency(&self) -> Result<f64> {
        self.validate()?;
        natural_frequency(self.stiffness()?, self.tip_mass)
    }
}

/// `b·h³/12`, bending about the axis parallel to the width.
pub fn area_moment(width: f64, thickness: f64) -> Result<f64> {
    positive("section width", width)?;
    positive("section thickness", thickness)?;
    Ok(width * thickness * thickness * thickness / 12.0)
}

/// Cantilever tip stiffness `3·E·I/l³`.
pub fn tip_stiffness(youngs_modulus: f64, area_moment: f64, length: f64) -> Result<f64> {
    positive("Young's modulus", youngs_modulus)?;
    positive("second moment of area", area_moment)?;
    positive("beam length", length)?;
    Ok(3.0 * youngs_modulus * area_moment / (length * length * length))
}

/// `√(c/m)`.
pub fn natural_frequency(stiffness: f64, mass: f64) -> Result<f64> {
    positive("stiffness", stiffness)?;
    positive("mass", mass)?;
    Ok(sqrt(stiffness / mass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::TAU;

    fn strip(tip_mass: f64) -> BeamSpec {
        BeamSpec::new(0.305, 0.013, 0.5e-3, 2.1e11, tip_mass).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn area_moment_examples() {
        assert!(rel(area_moment(0.013, 0.5e-3).unwrap(), 1.3542e-13) < 1e-4);
        assert_eq!(area_moment(1.0, 1.0).unwrap(), 1.0 / 12.0);
        let base = area_moment(0.02, 0.001).unwrap();
        assert!(rel(area_moment(0.02, 0.002).unwrap(), 8.0 * base) < 1e-15);
        assert!(area_moment(0.0, 1.0).is_err());
        assert!(area_moment(1.0, -1.0).is_err());
    }

    #[test]
    fn stiffness_examples() {
        let c = strip(0.09).stiffness().unwrap();
        assert!((c - 3.007).abs() < 5e-4);
        assert_eq!(tip_stiffness(1.0, 1.0, 1.0).unwrap(), 3.0);
        let c1 = tip_stiffness(2.0e11, 1e-13, 0.3).unwrap();
        let c2 = tip_stiffness(2.0e11, 1e-13, 0.6).unwrap();
        assert!(rel(c2, c1 / 8.0) < 1e-15);
        assert!(tip_stiffness(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn frequency_examples() {
        let k = strip(0.09).natural_frequency().unwrap();
        assert!(rel(k, 5.78) < 5e-3);
        assert!(rel(k, 5.78) < 2e-4);
        let k = strip(0.06).natural_frequency().unwrap();
        assert!((k - 7.08).abs() < 5e-3);
        assert_eq!(natural_frequency(1.0, 1.0).unwrap(), 1.0);
        assert!(natural_frequency(1.0, 0.0).is_err());
    }

    #[test]
    fn quadrupled_mass_halves_frequency() {
        let c = 3.0068596;
        for m in [0.01, 0.09, 0.37, 2.5] {
            let k = natural_frequency(c, m).unwrap();
            let k4 = natural_frequency(c, 4.0 * m).unwrap();
            assert!((k4 - k / 2.0).abs() <= f64::EPSILON * k);
        }
    }

    #[test]
    fn period_matches_motion_spec() {
        let k = strip(0.09).natural_frequency().unwrap();
        let spec = crate::MotionSpec::strict(0.41, k, 2, 0.09).unwrap();
        assert_eq!(spec.natural_period(), TAU / k);
    }

    #[test]
    fn rejects_thick_section() {
        assert!(matches!(
            BeamSpec::new(0.3, 0.001, 0.01, 2e11, 0.1),
            Err(Error::ThickSection { .. })
        ));
        assert!(BeamSpec::new(0.3, 0.01, 0.001, 2e11, 0.0).is_err());
    }
}
