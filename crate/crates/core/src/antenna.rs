//! Antenna gain patterns for the transmitter, the receiver and IRS elements.
//!
//! All patterns are azimuth-independent, so they can be evaluated from the
//! cosine of the polar angle alone (see [`GainPattern::gain_cos`]), which is
//! what the propagation kernel does per element and timestep.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::geometry::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GainPattern {
    /// Unit gain in every direction.
    IsotropicFull,
    /// Unit gain over the front hemisphere, zero behind.
    IsotropicHemisphere,
    /// Flat element of size `dx × dy`: `(4π/λ²)·dx·dy·cos θ` over the front
    /// hemisphere, zero behind.
    PlanarElement { dx: f64, dy: f64, wavelength: f64 },
}

impl GainPattern {
    /// Linear gain towards `dir`. The boundary `θ = π/2` counts as back side.
    pub fn gain(&self, dir: &Direction) -> f64 {
        match *self {
            GainPattern::IsotropicFull => 1.0,
            _ if dir.polar >= FRAC_PI_2 => 0.0,
            _ => self.gain_cos(dir.polar.cos()),
        }
    }

    /// Linear gain as a function of `cos θ`.
    #[inline]
    pub fn gain_cos(&self, cos_polar: f64) -> f64 {
        match *self {
            GainPattern::IsotropicFull => 1.0,
            _ if !(cos_polar > 0.0) => 0.0,
            GainPattern::IsotropicHemisphere => 1.0,
            GainPattern::PlanarElement { dx, dy, wavelength } => {
                4.0 * PI / (wavelength * wavelength) * dx * dy * cos_polar.min(1.0)
            }
        }
    }

    /// Whether the pattern is zero over the back hemisphere.
    pub fn is_one_sided(&self) -> bool {
        !matches!(self, GainPattern::IsotropicFull)
    }
}

/// Effective capture area `G·λ²/(4π)` in m².
pub fn effective_area(pattern: &GainPattern, dir: &Direction, wavelength: f64) -> f64 {
    pattern.gain(dir) * wavelength * wavelength / (4.0 * PI)
}
