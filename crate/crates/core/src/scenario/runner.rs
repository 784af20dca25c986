//! Scene derivation and the time sweep over a satellite pass.

use std::sync::Arc;

use rayon::prelude::*;

use super::config::{ElementKind, GridSpec, ScenarioConfig, VariantConfig};
use crate::antenna::GainPattern;
use crate::geometry::{IrsLayout, Point3, Pose};
use crate::orbit::{elevation_at, orbit_from_scenario, pass_window, CircularOrbit, EarthModel};
use crate::phase::PhaseStrategy;
use crate::propagation::{delay_spread, doppler_spread_for, received_power, IrsSurface, Scene, Trajectory};
use crate::{Error, Result};

/// Metrics of one variant at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantMetrics {
    /// `10·log₁₀(P_Rx/P_Tx)`
    pub channel_gain_db: f64,
    /// Channel gain minus the no-IRS channel gain.
    pub irs_gain_db: f64,
    pub delay_spread_s: f64,
    /// Delay spread in carrier periods.
    pub delay_spread_periods: f64,
    pub doppler_spread_hz: f64,
    /// `Σ A_{m,n} / A₀`, zero without an IRS.
    pub irs_amplitude_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub t_s: f64,
    pub elevation_deg: f64,
    /// One entry per variant, in config order.
    pub variants: Vec<VariantMetrics>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub variant_names: Vec<String>,
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    pub fn variant_index(&self, name: &str) -> Option<usize> {
        self.variant_names.iter().position(|n| n == name)
    }

    /// `(t, metrics)` series of the named variant.
    pub fn series(&self, name: &str) -> Option<Vec<(f64, VariantMetrics)>> {
        let i = self.variant_index(name)?;
        Some(self.records.iter().map(|r| (r.t_s, r.variants[i])).collect())
    }
}

/// The satellite orbit of the config.
pub fn derive_orbit(cfg: &ScenarioConfig) -> Result<CircularOrbit> {
    let o = &cfg.orbit;
    orbit_from_scenario(
        o.altitude_m,
        &EarthModel { radius: o.earth_radius_m },
        o.irs_ground_elevation_m,
        o.plane_offset_d_m,
        o.kepler_mu_m3s2,
    )
}

/// Point on the ground below the transmitter, used as the elevation reference.
pub fn ground_point(cfg: &ScenarioConfig) -> Point3 {
    let [x, _, z] = cfg.tx_position_m;
    Point3::new(x, -cfg.orbit.irs_ground_elevation_m, z)
}

fn element_kind(cfg: &ScenarioConfig, variant: &VariantConfig) -> ElementKind {
    variant.element_pattern.unwrap_or(cfg.irs.element_pattern)
}

fn uptilt(cfg: &ScenarioConfig, variant: &VariantConfig) -> f64 {
    variant.uptilt_deg.unwrap_or(cfg.irs.uptilt_deg)
}

fn surface(cfg: &ScenarioConfig, kind: ElementKind, uptilt_deg: f64) -> Result<IrsSurface> {
    let GridSpec { cols, rows, dx, dy } = cfg.grid(kind);
    let element_pattern = match kind {
        ElementKind::Planar => GainPattern::PlanarElement { dx, dy, wavelength: cfg.wavelength() },
        ElementKind::Isotropic => GainPattern::IsotropicHemisphere,
    };
    Ok(IrsSurface {
        layout: IrsLayout::new(cols, rows, dx, dy)?,
        pose: Pose::uptilt(uptilt_deg),
        element_pattern,
        reflection_efficiency: cfg.irs.reflection_efficiency,
    })
}

fn scene_with(cfg: &ScenarioConfig, orbit: Arc<dyn Trajectory>, irs: Option<IrsSurface>) -> Result<Scene> {
    let [x, y, z] = cfg.tx_position_m;
    let mut builder = Scene::builder_shared(Point3::new(x, y, z), orbit, cfg.carrier_frequency_hz)
        .tx_pattern(cfg.tx_pattern.into())
        .rx_pattern(cfg.rx_pattern.into())
        .tx_power(cfg.tx_power_w);
    if let Some(irs) = irs {
        builder = builder.irs(irs);
    }
    builder.build()
}

/// Scene of one variant: the satellite orbit as receiver trajectory and,
/// unless the variant disables it, the configured IRS with the variant's
/// element pattern and uptilt.
pub fn derive_scene(cfg: &ScenarioConfig, variant: &VariantConfig) -> Result<Scene> {
    let orbit: Arc<dyn Trajectory> = Arc::new(derive_orbit(cfg)?);
    let irs =
        if variant.irs_enabled { Some(surface(cfg, element_kind(cfg, variant), uptilt(cfg, variant))?) } else { None };
    scene_with(cfg, orbit, irs)
}

/// Variants that share one IRS geometry, evaluated on one snapshot.
#[derive(Debug)]
struct Group {
    scene: Scene,
    members: Vec<(usize, PhaseStrategy)>,
}

/// A prepared sweep: scenes are built once and shared by all time steps.
#[derive(Debug)]
pub struct Simulation {
    orbit: CircularOrbit,
    ground: Point3,
    baseline: Scene,
    groups: Vec<Group>,
    names: Vec<String>,
    times: Vec<f64>,
}

impl Simulation {
    pub fn new(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let orbit = derive_orbit(cfg)?;
        let shared: Arc<dyn Trajectory> = Arc::new(orbit);
        let baseline = scene_with(cfg, shared.clone(), None)?;
        let mut keys: Vec<(ElementKind, u64)> = Vec::new();
        let mut groups: Vec<Group> = Vec::new();
        for (i, v) in cfg.variants.iter().enumerate() {
            if !v.irs_enabled {
                continue;
            }
            let key = (element_kind(cfg, v), uptilt(cfg, v).to_bits());
            let slot = match keys.iter().position(|k| *k == key) {
                Some(slot) => slot,
                None => {
                    let irs = surface(cfg, key.0, uptilt(cfg, v))?;
                    groups.push(Group { scene: scene_with(cfg, shared.clone(), Some(irs))?, members: Vec::new() });
                    keys.push(key);
                    keys.len() - 1
                }
            };
            groups[slot].members.push((i, v.phase_strategy()));
        }
        Ok(Self {
            orbit,
            ground: ground_point(cfg),
            baseline,
            groups,
            names: cfg.variants.iter().map(|v| v.name.clone()).collect(),
            times: cfg.sample_times(),
        })
    }

    pub fn orbit(&self) -> &CircularOrbit {
        &self.orbit
    }

    pub fn variant_names(&self) -> &[String] {
        &self.names
    }

    pub fn sample_times(&self) -> &[f64] {
        &self.times
    }

    /// Metrics of every variant at time `t`.
    pub fn record_at(&self, t: f64) -> Result<SweepRecord> {
        let with_t = |e: Error| match e {
            Error::Invariant(_) => e,
            other => Error::Invariant(format!("t={t}: {other}")),
        };
        let base = self.baseline.snapshot(t).map_err(with_t)?;
        let base_power = received_power(&base, &[], self.baseline.tx_power()).map_err(with_t)?;
        let base_gain = to_db(base_power / self.baseline.tx_power());
        let none = VariantMetrics {
            channel_gain_db: base_gain,
            irs_gain_db: 0.0,
            delay_spread_s: 0.0,
            delay_spread_periods: 0.0,
            doppler_spread_hz: 0.0,
            irs_amplitude_ratio: 0.0,
        };
        let mut variants = vec![none; self.names.len()];

        for group in &self.groups {
            let scene = &group.scene;
            let fc = scene.carrier_frequency();
            let snap = scene.snapshot(t).map_err(with_t)?;
            snap.check_invariants()?;
            let rates = scene.path_rates(t).map_err(with_t)?;
            let ratio = snap.total_element_amplitude() / snap.direct_amplitude();
            for (i, strategy) in &group.members {
                let phases = strategy.evaluate(&snap).map_err(with_t)?;
                let power = received_power(&snap, &phases, scene.tx_power()).map_err(with_t)?;
                let spread = delay_spread(&snap, &phases).map_err(with_t)?;
                let gain = to_db(power / scene.tx_power());
                variants[*i] = VariantMetrics {
                    channel_gain_db: gain,
                    irs_gain_db: gain - base_gain,
                    delay_spread_s: spread,
                    delay_spread_periods: spread * fc,
                    doppler_spread_hz: doppler_spread_for(&rates, strategy, fc),
                    irs_amplitude_ratio: ratio,
                };
            }
        }
        let elevation = elevation_at(&self.orbit, &self.ground, t)?;
        Ok(SweepRecord { t_s: t, elevation_deg: elevation.to_degrees(), variants })
    }

    /// Evaluates every sample time, in parallel over time steps. Records come
    /// back in time order.
    pub fn run(&self) -> Result<SweepResult> {
        let records = self.times.par_iter().map(|&t| self.record_at(t)).collect::<Result<Vec<_>>>()?;
        Ok(SweepResult { variant_names: self.names.clone(), records })
    }
}

fn to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Runs the configured sweep. The sample interval is not clipped to the
/// visibility window; the `elevation_deg` column tells which records are
/// inside it.
pub fn run_sweep(cfg: &ScenarioConfig) -> Result<SweepResult> {
    Simulation::new(cfg)?.run()
}

/// Metrics of every variant at a single instant.
pub fn snapshot_report(cfg: &ScenarioConfig, t: f64) -> Result<SweepRecord> {
    Simulation::new(cfg)?.record_at(t)
}

/// Visibility window of the configured pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PassSummary {
    pub t_start_s: f64,
    pub t_end_s: f64,
    pub max_elevation_deg: f64,
    /// Time of the maximum elevation.
    pub t_max_s: f64,
}

/// Start, end and culmination of the pass above `orbit.min_elevation_deg`.
pub fn pass_summary(cfg: &ScenarioConfig) -> Result<PassSummary> {
    cfg.validate()?;
    let orbit = derive_orbit(cfg)?;
    let ground = ground_point(cfg);
    let (t0, t1) = pass_window(&orbit, &ground, cfg.orbit.min_elevation_deg.to_radians())?;
    // elevation is unimodal over the pass; golden-section search for its peak
    let elev = |t: f64| elevation_at(&orbit, &ground, t);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (t0, t1);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (elev(c)?, elev(d)?);
    while b - a > 1e-6 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = elev(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = elev(d)?;
        }
    }
    let t_max = 0.5 * (a + b);
    Ok(PassSummary { t_start_s: t0, t_end_s: t1, max_elevation_deg: elev(t_max)?.to_degrees(), t_max_s: t_max })
}
