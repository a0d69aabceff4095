use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be {n}x{n}, got {len} entries")]
    Shape { n: usize, len: usize },
    #[error("network needs at least one agent")]
    Empty,
    #[error("entry ({row}, {col}) is {value}; weights must be finite and non-negative")]
    InvalidWeight { row: usize, col: usize, value: f64 },
    #[error("row {row} of layer {layer} sums to {sum}, not 1 (tolerance {tol:e})")]
    NotStochastic { layer: char, row: usize, sum: f64, tol: f64 },
    #[error("layers disagree on size: A is {a}, W is {w}")]
    LayerSize { a: usize, w: usize },
    #[error("agent index {index} out of range for n = {n}")]
    Index { index: usize, n: usize },
    #[error("parameter {name}[{index}] = {value} outside the open interval (0, 1)")]
    ParamRange { name: &'static str, index: usize, value: f64 },
    #[error("alpha = {0} must be finite and non-negative")]
    Alpha(f64),
    #[error("expected {expected} per-agent values for {name}, got {got}")]
    ParamLength { name: &'static str, expected: usize, got: usize },
    #[error("opinion y[{index}] = {value} outside [-1, 1]")]
    OpinionRange { index: usize, value: f64 },
    #[error("action x[{index}] = {value} is not -1 or +1")]
    ActionValue { index: usize, value: f64 },
    #[error("state has {got} agents, network has {n}")]
    StateSize { n: usize, got: usize },
    #[error("set is empty")]
    EmptySet,
    #[error("row {row} has zero total weight")]
    ZeroRow { row: usize },
    #[error("activation schedule has no certified persistence bound")]
    UnverifiedSchedule,
    #[error("invalid stop criterion: {0}")]
    StopCriterion(String),
    #[error("linear system is singular (pivot {pivot:e} at column {col})")]
    Singular { col: usize, pivot: f64 },
    #[error("fixed-point residual {residual:e} exceeds {tol:e}")]
    Residual { residual: f64, tol: f64 },
    #[error("enumeration over n = {n} agents exceeds n_max = {n_max}")]
    TooLarge { n: usize, n_max: usize },
    #[error("oracle disagreement: {0}")]
    OracleMismatch(String),
    #[error("trace did not converge; cross-validation needs a converged trace")]
    NotConverged,
    #[error("partition invalid: {0}")]
    Partition(String),
    #[error("grid resolution {0} must be at least 2")]
    Resolution(usize),
    #[error("scaling did not converge after {sweeps} sweeps (deviation {deviation:e})")]
    ScalingDiverged { sweeps: usize, deviation: f64 },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
