//! Channel state at one time instant and the power / delay-spread metrics.
//!
//! Path phases are handled relative to the direct path: an element path
//! contributes `A·exp(−j2π(x + φ/2π))` where `x` is its excess delay in carrier
//! periods. The common factor `exp(−j2πf_cτ₀)` has unit magnitude and is
//! dropped. `x` is a few thousand cycles in the LEO scenario, whereas `f_c·τ`
//! is around 10⁷ cycles, so reducing `x` modulo 1 keeps double precision
//! well away from cancellation.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::reduce;
use crate::geometry::IrsLayout;
use crate::{Error, Result};

/// State of one element path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementPath {
    /// `A_{m,n}`, dimensionless.
    pub amplitude: f64,
    /// `τ_{m,n}` in seconds, without the element's own delay.
    pub delay: f64,
    /// `f_c·(τ_{m,n} − τ₀)`, carrier periods.
    pub excess_cycles: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSnapshot {
    t: f64,
    direct_amplitude: f64,
    direct_delay: f64,
    carrier_frequency: f64,
    layout: Option<IrsLayout>,
    elements: Vec<ElementPath>,
}

impl ChannelSnapshot {
    /// Assembles a snapshot from precomputed paths (flat element order of
    /// `layout`). Mostly useful for toy channels in tests.
    pub fn new(
        t: f64,
        direct_amplitude: f64,
        direct_delay: f64,
        carrier_frequency: f64,
        layout: Option<IrsLayout>,
        elements: Vec<ElementPath>,
    ) -> Self {
        Self { t, direct_amplitude, direct_delay, carrier_frequency, layout, elements }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn direct_amplitude(&self) -> f64 {
        self.direct_amplitude
    }

    pub fn direct_delay(&self) -> f64 {
        self.direct_delay
    }

    pub fn carrier_frequency(&self) -> f64 {
        self.carrier_frequency
    }

    pub fn layout(&self) -> Option<&IrsLayout> {
        self.layout.as_ref()
    }

    pub fn elements(&self) -> &[ElementPath] {
        &self.elements
    }

    /// `Σ A_{m,n}`
    pub fn total_element_amplitude(&self) -> f64 {
        reduce::sum_by(&self.elements, |e| e.amplitude)
    }

    /// Checks `τ_{m,n} ≥ τ₀`, `x_{m,n} ≥ 0` and non-negative amplitudes.
    pub fn check_invariants(&self) -> Result<()> {
        if !(self.direct_amplitude >= 0.0) {
            return Err(Error::Invariant(format!(
                "t={}: direct amplitude {} is negative",
                self.t, self.direct_amplitude
            )));
        }
        // τ is rounded to ~1e-18 s at LEO distances; allow one ulp-scale slack
        let slack = self.direct_delay * 4.0 * f64::EPSILON;
        for (i, e) in self.elements.iter().enumerate() {
            if !(e.amplitude >= 0.0) || !(e.excess_cycles >= 0.0) || e.delay < self.direct_delay - slack {
                return Err(Error::Invariant(format!("t={}: element path {i} violates {e:?}", self.t)));
            }
        }
        Ok(())
    }
}

fn check_len(snap: &ChannelSnapshot, phases: &[f64]) -> Result<()> {
    if phases.len() != snap.elements.len() {
        return Err(Error::Dimension { expected: snap.elements.len(), actual: phases.len() });
    }
    Ok(())
}

/// Instantaneous received power
/// `P_Tx·|A₀ + Σ A_{m,n}·exp(−j(2πx_{m,n} + φ_{m,n}))|²` in watts.
pub fn received_power(snap: &ChannelSnapshot, phases: &[f64], tx_power: f64) -> Result<f64> {
    check_len(snap, phases)?;
    let sum = reduce::complex_sum_by(&snap.elements, |e, i| {
        let x = e.excess_cycles;
        let turns = (x - x.floor()) + phases[i] / TAU;
        let (s, c) = (-TAU * (turns - turns.floor())).sin_cos();
        Complex64::new(e.amplitude * c, e.amplitude * s)
    });
    Ok(tx_power * (sum + snap.direct_amplitude).norm_sqr())
}

/// Power with all paths phase aligned, `P_Tx·(A₀ + Σ A_{m,n})²`: an upper
/// bound on [`received_power`] over all phase tables.
pub fn coherent_bound(snap: &ChannelSnapshot, tx_power: f64) -> f64 {
    let total = snap.direct_amplitude + snap.total_element_amplitude();
    tx_power * total * total
}

/// Delay spread `max_{m,n}{τ_{m,n} + φ_{m,n}/(2πf_c)} − τ₀` in seconds, valid
/// for non-negative phases. Zero when there are no element paths.
pub fn delay_spread(snap: &ChannelSnapshot, phases: &[f64]) -> Result<f64> {
    check_len(snap, phases)?;
    if let Some(i) = phases.iter().position(|&p| !(p >= 0.0)) {
        return Err(Error::StrategyInfeasible(format!("phase {} at element {i} is negative (non-causal)", phases[i])));
    }
    let max_cycles =
        reduce::min_max_by(&snap.elements, |e, i| e.excess_cycles + phases[i] / TAU).map_or(0.0, |(_, max)| max);
    Ok(max_cycles.max(0.0) / snap.carrier_frequency)
}

/// Mean of `P_Rx(t)` over the sample span, trapezoidal rule.
pub fn average_power(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: samples.len() });
    }
    if let Some(i) = samples.windows(2).position(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Ordering(i + 1));
    }
    let integral: f64 = samples.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum();
    let span = samples[samples.len() - 1].0 - samples[0].0;
    Ok(integral / span)
}
