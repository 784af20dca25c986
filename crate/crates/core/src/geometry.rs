//! Points, direction angles, the IRS element grid and the board pose.
//!
//! The IRS lives in the xy-plane of its own board frame with its geometric
//! center at the origin and its normal along +z. World placement goes through
//! a [`Pose`].

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use nalgebra::{Rotation3, Vector3};

use crate::{Error, Result};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vec3 = Vector3<f64>;

/// Polar angle measured from +z and azimuth measured from +x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    /// Radians in `[0, π]`.
    pub polar: f64,
    /// Radians in `[0, 2π)`.
    pub azimuth: f64,
}

impl Direction {
    /// Direction of a non-zero vector.
    pub fn of(v: &Vec3) -> Result<Self> {
        let norm = v.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::DegenerateGeometry("direction of a zero-length vector"));
        }
        let polar = (v.z / norm).clamp(-1.0, 1.0).acos();
        let azimuth = if v.x == 0.0 && v.y == 0.0 {
            0.0
        } else {
            let a = v.y.atan2(v.x);
            let a = if a < 0.0 { a + TAU } else { a };
            // -tiny + 2π can round up to 2π
            if a >= TAU {
                0.0
            } else {
                a
            }
        };
        Ok(Self { polar, azimuth })
    }

    /// Cosine of the polar angle, i.e. the projection onto +z.
    pub fn cos_polar(&self) -> f64 {
        self.polar.cos()
    }
}

/// Direction from `from` towards `to`.
///
/// The azimuth uses a quadrant-aware arctangent; a purely vertical direction
/// has azimuth 0.
pub fn direction_angles(from: &Point3, to: &Point3) -> Result<Direction> {
    Direction::of(&(to - from))
}

/// Grid index set `{mod(M+1, 2) - ⌊M/2⌋, …, ⌊M/2⌋}` for `count` elements
/// along one axis. Even counts are shifted so that index 0 sits just below
/// the center.
pub fn grid_indices(count: usize) -> Result<RangeInclusive<i64>> {
    if count == 0 {
        return Err(Error::InvalidLayout("element count must be at least 1".into()));
    }
    let m = count as i64;
    Ok(((m + 1).rem_euclid(2) - m / 2)..=(m / 2))
}

/// Coordinate of the center of element `index` along one axis.
fn axis_center(index: i64, spacing: f64, count: usize) -> f64 {
    index as f64 * spacing - 0.5 * spacing * ((count as i64 + 1).rem_euclid(2)) as f64
}

/// Rectangular grid of `cols × rows` elements spaced `dx` by `dy` meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsLayout {
    cols: usize,
    rows: usize,
    dx: f64,
    dy: f64,
}

impl IrsLayout {
    pub fn new(cols: usize, rows: usize, dx: f64, dy: f64) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return Err(Error::InvalidLayout(format!("grid must have at least one column and row, got {cols}x{rows}")));
        }
        if !(dx > 0.0 && dx.is_finite() && dy > 0.0 && dy.is_finite()) {
            return Err(Error::InvalidLayout(format!("element spacing must be positive, got dx={dx}, dy={dy}")));
        }
        Ok(Self { cols, rows, dx, dy })
    }

    /// Number of columns `M` (along x).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of rows `N` (along y).
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn len(&self) -> usize {
        self.cols * self.rows
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn col_indices(&self) -> RangeInclusive<i64> {
        grid_indices(self.cols).expect("cols >= 1")
    }

    pub fn row_indices(&self) -> RangeInclusive<i64> {
        grid_indices(self.rows).expect("rows >= 1")
    }

    /// Position of element `(m, n)` in the board frame.
    pub fn element_center(&self, m: i64, n: i64) -> Result<Point3> {
        self.flat_index(m, n)?;
        Ok(self.center_unchecked(m, n))
    }

    fn center_unchecked(&self, m: i64, n: i64) -> Point3 {
        Point3::new(axis_center(m, self.dx, self.cols), axis_center(n, self.dy, self.rows), 0.0)
    }

    /// Position of `(m, n)` in the flat, column-major element order used by
    /// snapshots and phase tables.
    pub fn flat_index(&self, m: i64, n: i64) -> Result<usize> {
        let cols = self.col_indices();
        let rows = self.row_indices();
        if !cols.contains(&m) || !rows.contains(&n) {
            return Err(Error::OutOfGrid { m, n, cols: self.cols, rows: self.rows });
        }
        let i = (m - cols.start()) as usize;
        let j = (n - rows.start()) as usize;
        Ok(i * self.rows + j)
    }

    /// All `(m, n, center)` triples in flat order.
    pub fn elements(&self) -> impl Iterator<Item = (i64, i64, Point3)> + '_ {
        let rows = self.row_indices();
        self.col_indices().flat_map(move |m| rows.clone().map(move |n| (m, n, self.center_unchecked(m, n))))
    }

    pub fn width(&self) -> f64 {
        self.cols as f64 * self.dx
    }

    pub fn height(&self) -> f64 {
        self.rows as f64 * self.dy
    }
}

/// Rigid placement of the board frame in the world.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    rotation: Rotation3<f64>,
    origin: Point3,
}

impl Default for Pose {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose {
    pub fn identity() -> Self {
        Self { rotation: Rotation3::identity(), origin: Point3::origin() }
    }

    pub fn new(rotation: Rotation3<f64>, origin: Point3) -> Self {
        Self { rotation, origin }
    }

    /// Board tilted about its x-axis so that the normal moves from +z towards
    /// +y: the world image of the frame normal is `(0, sin ρ, cos ρ)`.
    pub fn uptilt(degrees: f64) -> Self {
        let rho = degrees.to_radians();
        Self { rotation: Rotation3::from_axis_angle(&Vec3::x_axis(), -rho), origin: Point3::origin() }
    }

    pub fn with_origin(mut self, origin: Point3) -> Self {
        self.origin = origin;
        self
    }

    pub fn rotation(&self) -> &Rotation3<f64> {
        &self.rotation
    }

    pub fn origin(&self) -> &Point3 {
        &self.origin
    }

    /// World direction of the board normal.
    pub fn normal(&self) -> Vec3 {
        self.rotation * Vec3::z()
    }

    pub fn to_frame(&self, world: &Point3) -> Point3 {
        Point3::from(self.rotation.inverse_transform_vector(&(world - self.origin)))
    }

    pub fn to_world(&self, frame: &Point3) -> Point3 {
        self.origin + self.rotation * frame.coords
    }

    /// Rotates a free vector (no translation) into the board frame.
    pub fn vector_to_frame(&self, world: &Vec3) -> Vec3 {
        self.rotation.inverse_transform_vector(world)
    }
}
