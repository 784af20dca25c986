//! JSON scenario configuration.
//!
//! Every key is optional; absent keys take the ground-to-LEO defaults
//! (2 GHz, 1500 km altitude, 18.3 m × 12.2 m surface, 10° minimum
//! elevation). Unknown keys are rejected. Key names carry their unit as a
//! suffix (`_m`, `_hz`, `_deg`, `_s`, `_w`, `_m3s2`).

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::antenna::GainPattern;
use crate::orbit::EARTH_MU;
use crate::phase::{KPolicy, PhaseStrategy};
use crate::{Error, Result, SPEED_OF_LIGHT};

/// Pattern of the transmit or receive antenna.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalPattern {
    IsotropicFull,
    IsotropicHemisphere,
}

impl From<TerminalPattern> for GainPattern {
    fn from(p: TerminalPattern) -> Self {
        match p {
            TerminalPattern::IsotropicFull => GainPattern::IsotropicFull,
            TerminalPattern::IsotropicHemisphere => GainPattern::IsotropicHemisphere,
        }
    }
}

/// Pattern of the IRS elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    /// `(4π/λ²)·dx·dy·cos θ` over the front hemisphere.
    Planar,
    /// Unit gain over the front hemisphere.
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    Pareto,
    #[serde(alias = "specular")]
    ZeroPhase,
    Diffuse,
    ExplicitK,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IrsConfig {
    /// Element rows `N` (along y). Default depends on the element pattern.
    pub rows: Option<usize>,
    /// Element columns `M` (along x).
    pub cols: Option<usize>,
    pub dx_m: Option<f64>,
    pub dy_m: Option<f64>,
    pub width_m: f64,
    pub height_m: f64,
    pub uptilt_deg: f64,
    pub element_pattern: ElementKind,
    pub reflection_efficiency: f64,
}

impl Default for IrsConfig {
    fn default() -> Self {
        Self {
            rows: None,
            cols: None,
            dx_m: None,
            dy_m: None,
            width_m: 18.3,
            height_m: 12.2,
            uptilt_deg: 0.0,
            element_pattern: ElementKind::Planar,
            reflection_efficiency: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitConfig {
    pub altitude_m: f64,
    pub earth_radius_m: f64,
    /// Height of the IRS center above ground.
    pub irs_ground_elevation_m: f64,
    /// Offset `d` of the orbital plane along z.
    pub plane_offset_d_m: f64,
    pub min_elevation_deg: f64,
    pub kepler_mu_m3s2: f64,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        Self {
            altitude_m: 1500e3,
            earth_radius_m: 6371e3,
            irs_ground_elevation_m: 100.0,
            plane_offset_d_m: 1000.0,
            min_elevation_deg: 10.0,
            kepler_mu_m3s2: EARTH_MU,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub t_start_s: f64,
    pub t_end_s: f64,
    pub step_s: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { t_start_s: -525.0, t_end_s: 525.0, step_s: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariantConfig {
    pub name: String,
    #[serde(default = "yes")]
    pub irs_enabled: bool,
    #[serde(default = "pareto")]
    pub strategy: StrategyKind,
    /// Seed of the diffuse strategy.
    #[serde(default)]
    pub seed: u64,
    /// Extra whole periods on top of `⌈x⌉` for the explicit-k strategy.
    #[serde(default)]
    pub extra_periods: u64,
    /// Overrides `irs.element_pattern` for this variant.
    #[serde(default)]
    pub element_pattern: Option<ElementKind>,
    /// Overrides `irs.uptilt_deg` for this variant.
    #[serde(default)]
    pub uptilt_deg: Option<f64>,
}

fn yes() -> bool {
    true
}

fn pareto() -> StrategyKind {
    StrategyKind::Pareto
}

impl VariantConfig {
    pub fn new(name: &str, strategy: StrategyKind) -> Self {
        Self {
            name: name.to_owned(),
            irs_enabled: true,
            strategy,
            seed: 0,
            extra_periods: 0,
            element_pattern: None,
            uptilt_deg: None,
        }
    }

    pub fn without_irs(name: &str) -> Self {
        Self { irs_enabled: false, ..Self::new(name, StrategyKind::ZeroPhase) }
    }

    pub fn with_pattern(mut self, kind: ElementKind) -> Self {
        self.element_pattern = Some(kind);
        self
    }

    pub fn with_uptilt(mut self, degrees: f64) -> Self {
        self.uptilt_deg = Some(degrees);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn phase_strategy(&self) -> PhaseStrategy {
        match self.strategy {
            StrategyKind::Pareto => PhaseStrategy::ParetoOptimal,
            StrategyKind::ZeroPhase => PhaseStrategy::ZeroPhase,
            StrategyKind::Diffuse => PhaseStrategy::Diffuse { seed: self.seed },
            StrategyKind::ExplicitK => PhaseStrategy::ExplicitK(KPolicy::ExtraPeriods(self.extra_periods)),
        }
    }
}

/// The six configurations of the LEO case study: no IRS, isotropic
/// elements, planar elements flat and tilted by 45°, and the diffuse and
/// specular reflector baselines.
pub fn default_variants() -> Vec<VariantConfig> {
    vec![
        VariantConfig::without_irs("no_irs"),
        VariantConfig::new("isotropic", StrategyKind::Pareto).with_pattern(ElementKind::Isotropic),
        VariantConfig::new("planar", StrategyKind::Pareto),
        VariantConfig::new("planar_tilt45", StrategyKind::Pareto).with_uptilt(45.0),
        VariantConfig::new("diffuse", StrategyKind::Diffuse).with_seed(1),
        VariantConfig::new("specular", StrategyKind::ZeroPhase),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub carrier_frequency_hz: f64,
    pub tx_power_w: f64,
    pub tx_position_m: [f64; 3],
    pub tx_pattern: TerminalPattern,
    pub rx_pattern: TerminalPattern,
    pub irs: IrsConfig,
    pub orbit: OrbitConfig,
    pub sweep: SweepConfig,
    pub variants: Vec<VariantConfig>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            carrier_frequency_hz: 2e9,
            tx_power_w: 1.0,
            tx_position_m: [0.0, -100.0, 1000.0],
            tx_pattern: TerminalPattern::IsotropicFull,
            rx_pattern: TerminalPattern::IsotropicFull,
            irs: IrsConfig::default(),
            orbit: OrbitConfig::default(),
            sweep: SweepConfig::default(),
            variants: default_variants(),
        }
    }
}

/// Grid shape and spacing after defaults are applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub cols: usize,
    pub rows: usize,
    pub dx: f64,
    pub dy: f64,
}

const ISOTROPIC_COLS: usize = 433;
const ISOTROPIC_ROWS: usize = 288;

impl ScenarioConfig {
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency_hz
    }

    /// Grid for `kind` elements. Planar elements default to `λ/5` spacing
    /// over the configured surface; isotropic elements default to a
    /// 433 × 288 grid (one effective area `λ²/4π` per element) spread over
    /// the same surface.
    pub fn grid(&self, kind: ElementKind) -> GridSpec {
        let irs = &self.irs;
        match kind {
            ElementKind::Planar => {
                let dx = irs.dx_m.unwrap_or(self.wavelength() / 5.0);
                let dy = irs.dy_m.unwrap_or(self.wavelength() / 5.0);
                GridSpec {
                    cols: irs.cols.unwrap_or((irs.width_m / dx).round() as usize),
                    rows: irs.rows.unwrap_or((irs.height_m / dy).round() as usize),
                    dx,
                    dy,
                }
            }
            ElementKind::Isotropic => {
                let cols = irs.cols.unwrap_or(ISOTROPIC_COLS);
                let rows = irs.rows.unwrap_or(ISOTROPIC_ROWS);
                GridSpec {
                    cols,
                    rows,
                    dx: irs.dx_m.unwrap_or(irs.width_m / cols.max(1) as f64),
                    dy: irs.dy_m.unwrap_or(irs.height_m / rows.max(1) as f64),
                }
            }
        }
    }

    /// Sample times of the sweep, `t_start + i·step` up to `t_end` inclusive.
    pub fn sample_times(&self) -> Vec<f64> {
        let s = &self.sweep;
        let count = ((s.t_end_s - s.t_start_s) / s.step_s + 1e-9).floor() as usize + 1;
        (0..count).map(|i| s.t_start_s + i as f64 * s.step_s).collect()
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(key: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(bad(key, format!("must be a positive finite number, got {v}")))
            }
        }
        fn bad(key: &str, reason: String) -> Error {
            Error::ConfigValue { key: key.to_owned(), reason }
        }

        positive("carrier_frequency_hz", self.carrier_frequency_hz)?;
        positive("tx_power_w", self.tx_power_w)?;
        if self.tx_position_m.iter().any(|c| !c.is_finite()) {
            return Err(bad("tx_position_m", "coordinates must be finite".into()));
        }

        let irs = &self.irs;
        if irs.rows == Some(0) {
            return Err(bad("irs.rows", "must be at least 1".into()));
        }
        if irs.cols == Some(0) {
            return Err(bad("irs.cols", "must be at least 1".into()));
        }
        if let Some(dx) = irs.dx_m {
            positive("irs.dx_m", dx)?;
        }
        if let Some(dy) = irs.dy_m {
            positive("irs.dy_m", dy)?;
        }
        positive("irs.width_m", irs.width_m)?;
        positive("irs.height_m", irs.height_m)?;
        check_uptilt("irs.uptilt_deg", irs.uptilt_deg)?;
        if !(0.0..=1.0).contains(&irs.reflection_efficiency) {
            return Err(bad(
                "irs.reflection_efficiency",
                format!("must lie in [0, 1], got {}", irs.reflection_efficiency),
            ));
        }
        for kind in [ElementKind::Planar, ElementKind::Isotropic] {
            let g = self.grid(kind);
            if g.cols == 0 || g.rows == 0 {
                return Err(bad("irs.width_m", format!("surface is smaller than one {kind:?} element")));
            }
        }

        let orbit = &self.orbit;
        positive("orbit.altitude_m", orbit.altitude_m)?;
        positive("orbit.earth_radius_m", orbit.earth_radius_m)?;
        positive("orbit.kepler_mu_m3s2", orbit.kepler_mu_m3s2)?;
        if !orbit.irs_ground_elevation_m.is_finite() {
            return Err(bad("orbit.irs_ground_elevation_m", "must be finite".into()));
        }
        if !orbit.plane_offset_d_m.is_finite() {
            return Err(bad("orbit.plane_offset_d_m", "must be finite".into()));
        }
        if !(-90.0..=90.0).contains(&orbit.min_elevation_deg) {
            return Err(bad(
                "orbit.min_elevation_deg",
                format!("must lie in [-90, 90], got {}", orbit.min_elevation_deg),
            ));
        }

        positive("sweep.step_s", self.sweep.step_s)?;
        if !(self.sweep.t_start_s.is_finite() && self.sweep.t_end_s.is_finite())
            || self.sweep.t_start_s >= self.sweep.t_end_s
        {
            return Err(bad("sweep.t_start_s", "must be finite and before sweep.t_end_s".into()));
        }

        if self.variants.is_empty() {
            return Err(bad("variants", "at least one variant is required".into()));
        }
        let mut names = HashSet::new();
        for (i, v) in self.variants.iter().enumerate() {
            let key = format!("variants[{i}].name");
            if v.name.is_empty() || !v.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                return Err(bad(&key, format!("`{}` must be non-empty and use only [A-Za-z0-9_-]", v.name)));
            }
            if !names.insert(v.name.as_str()) {
                return Err(bad(&key, format!("duplicate variant name `{}`", v.name)));
            }
            if let Some(deg) = v.uptilt_deg {
                check_uptilt(&format!("variants[{i}].uptilt_deg"), deg)?;
            }
        }
        Ok(())
    }
}

fn check_uptilt(key: &str, deg: f64) -> Result<()> {
    if (0.0..=90.0).contains(&deg) {
        Ok(())
    } else {
        Err(Error::ConfigValue { key: key.to_owned(), reason: format!("must lie in [0, 90], got {deg}") })
    }
}

/// Parses and validates a JSON config document. A blank document yields the
/// default scenario.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let cfg: ScenarioConfig = if text.trim().is_empty() {
        ScenarioConfig::default()
    } else {
        serde_json::from_str(text).map_err(|e| Error::ConfigParse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_config(&text)
}
