use thiserror::Error;

/// Errors produced by the propagation model and the scenario runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid IRS layout: {0}")]
    InvalidLayout(String),

    #[error("element index ({m}, {n}) lies outside the {cols}x{rows} grid")]
    OutOfGrid { m: i64, n: i64, cols: usize, rows: usize },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),

    #[error("invalid scene parameter `{0}`")]
    InvalidScene(&'static str),

    #[error("phase table has {actual} entries, expected {expected}")]
    Dimension { expected: usize, actual: usize },

    #[error("phase strategy is infeasible: {0}")]
    StrategyInfeasible(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("samples must be strictly increasing in time (index {0})")]
    Ordering(usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("altitude must be positive, got {0} m")]
    InvalidAltitude(f64),

    #[error("satellite is never above the minimum elevation")]
    NoPass,

    #[error("config parse error at line {line}, column {column}: {message}")]
    ConfigParse { line: usize, column: usize, message: String },

    #[error("invalid config value at `{key}`: {reason}")]
    ConfigValue { key: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
