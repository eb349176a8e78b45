use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a total derivative: {residual}")]
    NotATotalDerivative { residual: String },

    #[error("depth exhausted: coefficient of lambda^{exponent} is below the known truncation (known down to lambda^{known_from})")]
    DepthExhausted { exponent: i64, known_from: i64 },

    #[error(
        "zero-curvature residual does not vanish at lambda^{exponent} ({component}): {residual}"
    )]
    ResidualNonZero {
        exponent: i32,
        component: &'static str,
        residual: String,
    },

    #[error("auxiliary elimination failed: {0}")]
    EliminationFailure(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("distinguished time mismatch: expected t_{expected}, got t_{found}")]
    TimeMismatch { expected: u32, found: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
