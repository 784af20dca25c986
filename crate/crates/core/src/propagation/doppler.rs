//! Delay rates and Doppler spread.
//!
//! The Doppler spread is `max{D₀, D_IRS}` with
//! `D₀ = f_c·max|ṙ_{m,n} − τ̇₀|` and `D_IRS = f_c·max|ṙ_{m,n} − ṙ_{m',n'}|`,
//! where `ṙ_{m,n} = τ̇_{m,n} + φ̇_{m,n}/(2πf_c)` is the total delay rate of an
//! element path. The pairwise maximum is just `max ṙ − min ṙ`.

use std::f64::consts::TAU;

use super::{leg, reduce, Scene};
use crate::geometry::{Point3, Vec3};
use crate::phase::PhaseStrategy;
use crate::{Result, SPEED_OF_LIGHT};

/// `d/dt ‖p_R(t) − p‖/c₀` for a fixed point `p` and receiver velocity `v`.
pub fn delay_rate(fixed: &Point3, rx: &Point3, rx_velocity: &Vec3) -> Result<f64> {
    let (los, d) = leg(fixed, rx)?;
    Ok(los.dot(rx_velocity) / (d * SPEED_OF_LIGHT))
}

/// Delay rates (s/s) of the direct path and of every element path. Only the
/// element-to-receiver leg moves, so that is the only leg that contributes.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRates {
    pub t: f64,
    pub direct: f64,
    pub elements: Vec<f64>,
}

/// Doppler spread in Hz from the direct-path delay rate and the total delay
/// rates of the element paths.
pub fn doppler_spread_from_rates(direct: f64, element_totals: &[f64], carrier_frequency: f64) -> f64 {
    match reduce::min_max_by(element_totals, |&r, _| r) {
        None => 0.0,
        Some((lo, hi)) => {
            let to_direct = (hi - direct).abs().max((lo - direct).abs());
            carrier_frequency * to_direct.max(hi - lo)
        }
    }
}

impl Scene {
    /// Doppler spread at `t` when the IRS follows `strategy`, using analytic
    /// delay rates and the strategy's continuous phase derivative.
    pub fn doppler_spread(&self, strategy: &PhaseStrategy, t: f64) -> Result<f64> {
        let rates = self.path_rates(t)?;
        Ok(doppler_spread_for(&rates, strategy, self.carrier_frequency()))
    }
}

/// Doppler spread for precomputed rates.
pub fn doppler_spread_for(rates: &PathRates, strategy: &PhaseStrategy, carrier_frequency: f64) -> f64 {
    let per_radian = 1.0 / (TAU * carrier_frequency);
    let totals: Vec<f64> = rates
        .elements
        .iter()
        .map(|&r| r + strategy.phase_rate(rates.direct, r, carrier_frequency) * per_radian)
        .collect();
    doppler_spread_from_rates(rates.direct, &totals, carrier_frequency)
}
