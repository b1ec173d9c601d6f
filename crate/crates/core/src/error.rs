use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("leading coefficient of the series is not 1")]
    NonUnitLeading,

    #[error("coupling g must be nonzero")]
    ZeroCoupling,

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("preset `{preset}` needs parameter `{param}`")]
    MissingPresetParam { preset: String, param: String },

    #[error("family {0} does not apply to these parameters")]
    TagNotApplicable(String),

    #[error("metric is not certified: residual is nonzero")]
    UncertifiedMetric,

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("inconsistent linear system at order {order}; residual {residual}")]
    InconsistentSystem { order: usize, residual: String },

    #[error("polynomial division leaves remainder")]
    NotDivisible,

    #[error("dimension {got} too small, need at least {need}")]
    DimensionTooSmall { need: usize, got: usize },

    #[error("eigensolver failed: {0}")]
    Eigen(String),

    #[error("matrix exponential did not converge")]
    ExpNonConvergence,

    #[error("config key `{key}`: {msg}")]
    Config { key: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
