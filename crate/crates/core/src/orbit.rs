//! Circular Keplerian receiver orbit, elevation angle and visibility window.
//!
//! Coordinates follow the IRS frame of the scenario: `y` points up through
//! the IRS, the orbit lies in the plane `z = d`, and the receiver is at its
//! highest point at `t = 0`, moving along `+x`.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::geometry::{Point3, Vec3};
use crate::propagation::Trajectory;
use crate::{Error, Result};

/// Standard gravitational parameter of the Earth in m³/s².
pub const EARTH_MU: f64 = 3.986_004e14;

/// Spherical Earth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    pub radius: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        Self { radius: 6_371e3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularOrbit {
    radius: f64,
    gravitational_parameter: f64,
    center: Point3,
}

impl CircularOrbit {
    /// Orbit of radius `radius` around `center` in the plane `z = center.z`,
    /// starting at `center + (0, radius, 0)`.
    pub fn new(radius: f64, gravitational_parameter: f64, center: Point3) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidScene("orbital radius"));
        }
        if !(gravitational_parameter > 0.0 && gravitational_parameter.is_finite()) {
            return Err(Error::InvalidScene("gravitational_parameter"));
        }
        Ok(Self { radius, gravitational_parameter, center })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn center(&self) -> Point3 {
        self.center
    }

    pub fn gravitational_parameter(&self) -> f64 {
        self.gravitational_parameter
    }

    /// `ω = √(μ/r³)` in rad/s.
    pub fn angular_rate(&self) -> f64 {
        (self.gravitational_parameter / self.radius.powi(3)).sqrt()
    }

    /// Orbital speed `√(μ/r)` in m/s.
    pub fn speed(&self) -> f64 {
        (self.gravitational_parameter / self.radius).sqrt()
    }

    pub fn period(&self) -> f64 {
        TAU / self.angular_rate()
    }

    /// Angle swept since `t = 0`.
    pub fn angle(&self, t: f64) -> f64 {
        self.angular_rate() * t
    }
}

impl Trajectory for CircularOrbit {
    fn position(&self, t: f64) -> Point3 {
        let (s, c) = self.angle(t).sin_cos();
        self.center + Vec3::new(self.radius * s, self.radius * c, 0.0)
    }

    fn velocity(&self, t: f64) -> Vec3 {
        let (s, c) = self.angle(t).sin_cos();
        self.radius * self.angular_rate() * Vec3::new(c, -s, 0.0)
    }
}

/// Orbit for a satellite at `altitude` above a spherical Earth, overhead the
/// IRS site at `t = 0`. The IRS sits `irs_ground_elevation` above ground and
/// the orbital plane is offset by `plane_offset` along `z`.
///
/// The receiver starts at `(0, altitude − irs_ground_elevation, plane_offset)`
/// and the orbit (and Earth) center lies `R_E + altitude` below it.
pub fn orbit_from_scenario(
    altitude: f64,
    earth: &EarthModel,
    irs_ground_elevation: f64,
    plane_offset: f64,
    gravitational_parameter: f64,
) -> Result<CircularOrbit> {
    if !(altitude > 0.0 && altitude.is_finite()) {
        return Err(Error::InvalidAltitude(altitude));
    }
    if !(earth.radius > 0.0) {
        return Err(Error::InvalidScene("earth radius"));
    }
    let radius = earth.radius + altitude;
    let start = Point3::new(0.0, altitude - irs_ground_elevation, plane_offset);
    CircularOrbit::new(radius, gravitational_parameter, start - Vec3::new(0.0, radius, 0.0))
}

/// Elevation of `sat` above the local horizon at `ground`, in radians.
pub fn elevation_angle(earth_center: &Point3, ground: &Point3, sat: &Point3) -> Result<f64> {
    let up = ground - earth_center;
    let los = sat - ground;
    if !(up.norm() > 0.0) || !(los.norm() > 0.0) {
        return Err(Error::DegenerateGeometry("elevation of coincident points"));
    }
    let cos = (up.dot(&los) / (up.norm() * los.norm())).clamp(-1.0, 1.0);
    Ok(FRAC_PI_2 - cos.acos())
}

/// Elevation of the orbiting receiver at time `t` seen from `ground`.
pub fn elevation_at(orbit: &CircularOrbit, ground: &Point3, t: f64) -> Result<f64> {
    // the ground point's Earth center is the orbit center moved into its plane
    let center = Point3::new(orbit.center.x, orbit.center.y, ground.z);
    elevation_angle(&center, ground, &orbit.position(t))
}

const BISECTION_TOLERANCE_S: f64 = 1e-7;

/// Maximal interval around `t = 0` during which the elevation at `ground` is
/// at least `min_elevation` (radians). Ends are located by bisection.
///
/// Windows that would exceed half an orbital period are clipped to
/// `±period/2`.
pub fn pass_window(orbit: &CircularOrbit, ground: &Point3, min_elevation: f64) -> Result<(f64, f64)> {
    let above = |t: f64| -> Result<bool> { Ok(elevation_at(orbit, ground, t)? >= min_elevation) };
    if !above(0.0)? {
        return Err(Error::NoPass);
    }
    let half = 0.5 * orbit.period();
    let step = orbit.period() / 720.0;
    let bisect = |mut inside: f64, mut outside: f64, dir: f64| -> Result<f64> {
        while outside - inside > BISECTION_TOLERANCE_S {
            let mid = 0.5 * (inside + outside);
            if above(dir * mid)? {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(dir * inside)
    };
    let edge = |dir: f64| -> Result<f64> {
        let mut inside = 0.0;
        loop {
            let next = inside + step;
            if next >= half {
                return if above(dir * half)? { Ok(dir * half) } else { bisect(inside, half, dir) };
            }
            if !above(dir * next)? {
                return bisect(inside, next, dir);
            }
            inside = next;
        }
    };
    Ok((edge(-1.0)?, edge(1.0)?))
}

/// Closed-form half width of a pass that goes through the zenith:
/// `(arccos(R_E·cos ε / r_o) − ε)/ω`.
pub fn zenith_pass_half_width(earth: &EarthModel, orbit: &CircularOrbit, min_elevation: f64) -> f64 {
    let central_angle = (earth.radius * min_elevation.cos() / orbit.radius()).acos() - min_elevation;
    central_angle / orbit.angular_rate()
}
