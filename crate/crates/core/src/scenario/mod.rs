//! Ground-to-LEO scenario: JSON configuration, time sweep over one pass
//! and CSV export.

mod config;
mod output;
mod runner;

pub use config::{
    default_variants, load_config, parse_config, ElementKind, GridSpec, IrsConfig, OrbitConfig, ScenarioConfig,
    StrategyKind, SweepConfig, TerminalPattern, VariantConfig,
};
pub use output::{header, write_csv, write_csv_to, COLUMNS_PER_VARIANT};
pub use runner::{
    derive_orbit, derive_scene, ground_point, pass_summary, run_sweep, snapshot_report, PassSummary, Simulation,
    SweepRecord, SweepResult, VariantMetrics,
};
