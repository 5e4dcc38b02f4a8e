use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lines are identical: {0}")]
    IdenticalLines(String),

    #[error("degenerate line or point: all coordinates are zero")]
    ZeroVector,

    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid cover spec: {0}")]
    InvalidCoverSpec(String),

    #[error("singular cover: point {point} on lines {lines} has epsilon {epsilon} dependent on character {character} of L{line}")]
    BadPoint {
        point: String,
        lines: String,
        epsilon: String,
        line: usize,
        character: String,
    },

    #[error("Noether violation: K^2 + e = {0} is not divisible by 12")]
    NoetherViolation(i64),

    #[error("canonical divisor is not big (D_K^2 = {0})")]
    NotBig(i64),

    #[error("no affine chart contains all {0} condition points")]
    ChartFailure(usize),

    #[error("negative irregularity: p_g = {pg}, chi = {chi}")]
    NegativeIrregularity { pg: i64, chi: i64 },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error at {location}: {message}")]
    Validation { location: String, message: String },
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation { .. }
            | Error::UnknownPreset(_)
            | Error::InvalidCoverSpec(_)
            | Error::InvalidArrangement(_)
            | Error::IdenticalLines(_)
            | Error::ZeroVector => 2,
            Error::BadPoint { .. } => 3,
            Error::NoetherViolation(_) | Error::NegativeIrregularity { .. } => 4,
            _ => 1,
        }
    }
}
