//! Per-element phase schedules.
//!
//! The power-maximizing phases align every element path with the direct path
//! up to whole carrier periods `k_{m,n}`. Causality forces
//! `k_{m,n} ≥ x_{m,n}` (the excess delay in periods), and the delay spread
//! grows with `max k_{m,n}`, so the smallest admissible choice
//! `k_{m,n} = ⌈x_{m,n}⌉` is optimal. It yields
//! `φ_{m,n} = 2π·mod(−x_{m,n}, 1) ∈ [0, 2π)`, adds no Doppler spread and
//! exceeds the physical minimum delay spread by less than one carrier period.

use std::f64::consts::TAU;

use crate::propagation::ChannelSnapshot;
use crate::{Error, Result};

/// How whole-period delays `k_{m,n}` are chosen for [`PhaseStrategy::ExplicitK`].
#[derive(Debug, Clone, PartialEq)]
pub enum KPolicy {
    /// `k = ⌈x⌉ + extra` for every element.
    ExtraPeriods(u64),
    /// One `k` per element in flat order. Rejected if any entry is below `x`.
    Table(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseStrategy {
    /// Lexicographic optimum: power first, then Doppler spread, then delay spread.
    ParetoOptimal,
    /// No element phase at all. Behaves like a flat specular mirror, and is
    /// the unique delay-spread minimizer.
    ZeroPhase,
    /// Frozen uniform phases on `[0, 2π)`, a function of `(seed, m, n)` only.
    Diffuse { seed: u64 },
    /// Power-maximizing phases `2π(k − x)` with a caller-chosen `k`.
    ExplicitK(KPolicy),
    /// A fixed phase table in flat element order.
    Custom(Vec<f64>),
}

/// Smallest causal whole-period delay, `⌈x⌉`.
pub fn k_min(excess_cycles: f64) -> Result<u64> {
    if !(excess_cycles >= 0.0) {
        return Err(Error::Invariant(format!("excess delay {excess_cycles} cycles is negative")));
    }
    Ok(excess_cycles.ceil() as u64)
}

/// `2π·mod(−x, 1)` with floored modulo; always in `[0, 2π)`.
#[inline]
pub fn pareto_phase(excess_cycles: f64) -> f64 {
    let frac = (-excess_cycles).rem_euclid(1.0);
    // rem_euclid rounds up to 1.0 for tiny positive x
    if frac >= 1.0 {
        0.0
    } else {
        TAU * frac
    }
}

/// Uniform draw on `[0, 1)` from a counter-based hash of `(seed, m, n)`.
fn diffuse_unit(seed: u64, m: i64, n: i64) -> f64 {
    let key = splitmix(seed ^ splitmix((m as u64).rotate_left(32) ^ (n as u64)));
    (key >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl PhaseStrategy {
    /// Phase table for `snap`, in radians, flat element order.
    pub fn evaluate(&self, snap: &ChannelSnapshot) -> Result<Vec<f64>> {
        let paths = snap.elements();
        let phases = match self {
            PhaseStrategy::ParetoOptimal => paths.iter().map(|e| pareto_phase(e.excess_cycles)).collect(),
            PhaseStrategy::ZeroPhase => vec![0.0; paths.len()],
            PhaseStrategy::Diffuse { seed } => match snap.layout() {
                None => Vec::new(),
                Some(layout) => layout.elements().map(|(m, n, _)| TAU * diffuse_unit(*seed, m, n)).collect(),
            },
            PhaseStrategy::ExplicitK(policy) => {
                let ks: Vec<u64> = match policy {
                    KPolicy::ExtraPeriods(extra) => {
                        paths.iter().map(|e| k_min(e.excess_cycles).map(|k| k + extra)).collect::<Result<_>>()?
                    }
                    KPolicy::Table(table) => {
                        if table.len() != paths.len() {
                            return Err(Error::Dimension { expected: paths.len(), actual: table.len() });
                        }
                        table.clone()
                    }
                };
                paths
                    .iter()
                    .zip(ks)
                    .enumerate()
                    .map(|(i, (e, k))| {
                        let x = e.excess_cycles;
                        if (k as f64) < x {
                            return Err(Error::StrategyInfeasible(format!(
                                "k={k} at element {i} is below the excess delay of {x} periods"
                            )));
                        }
                        // split k − x into whole and fractional turns to keep precision
                        Ok(TAU * ((k as f64 - x.ceil()) + (x.ceil() - x)))
                    })
                    .collect::<Result<_>>()?
            }
            PhaseStrategy::Custom(table) => {
                if table.len() != paths.len() {
                    return Err(Error::Dimension { expected: paths.len(), actual: table.len() });
                }
                if let Some(i) = table.iter().position(|p| !(*p >= 0.0 && p.is_finite())) {
                    return Err(Error::StrategyInfeasible(format!(
                        "custom phase {} at element {i} is not a finite non-negative value",
                        table[i]
                    )));
                }
                table.clone()
            }
        };
        Ok(phases)
    }

    /// Whether the phases follow the receiver so that `φ̇ = 2πf_c(τ̇₀ − τ̇_{m,n})`.
    pub fn tracks_receiver(&self) -> bool {
        matches!(self, PhaseStrategy::ParetoOptimal | PhaseStrategy::ExplicitK(_))
    }

    /// Continuous (unwrapped) phase derivative in rad/s for an element path
    /// with delay rate `element_rate`. Whole-period jumps of `k` are not
    /// frequency components and count as zero.
    pub fn phase_rate(&self, direct_rate: f64, element_rate: f64, carrier_frequency: f64) -> f64 {
        if self.tracks_receiver() {
            TAU * carrier_frequency * (direct_rate - element_rate)
        } else {
            0.0
        }
    }

    /// Short human-readable name.
    pub fn label(&self) -> &'static str {
        match self {
            PhaseStrategy::ParetoOptimal => "pareto",
            PhaseStrategy::ZeroPhase => "zero-phase",
            PhaseStrategy::Diffuse { .. } => "diffuse",
            PhaseStrategy::ExplicitK(_) => "explicit-k",
            PhaseStrategy::Custom(_) => "custom",
        }
    }
}
