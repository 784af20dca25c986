//! Continuous-time propagation model for line-of-sight links assisted by an
//! intelligent reflecting surface (IRS), with a receiver that moves along a
//! known trajectory.
//!
//! The crate computes per-element path delays and amplitudes, the
//! power-maximizing phase schedule that adds no Doppler spread and keeps the
//! extra delay spread below one carrier period, and the resulting received
//! power, Doppler spread and delay spread. A ground-to-LEO uplink scenario is
//! provided in [`scenario`] together with a CSV exporter and the `irs-sim`
//! binary.
//!
//! Module map:
//!
//! * [`geometry`]: points, direction angles, the element grid and board pose.
//! * [`antenna`]: gain patterns and effective aperture.
//! * [`propagation`]: scene, channel snapshots, power and spread metrics.
//! * [`phase`]: phase strategies (Pareto-optimal, specular, diffuse, ...).
//! * [`orbit`]: circular Keplerian orbit, elevation and visibility window.
//! * [`scenario`]: JSON config, time sweep and CSV output.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod antenna;
pub mod error;
pub mod geometry;
pub mod orbit;
pub mod phase;
pub mod propagation;
pub mod scenario;

pub use error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
