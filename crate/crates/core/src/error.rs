use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("amplitude count {found} does not match subsystem dimension product {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem name `{0}` appears more than once")]
    NameCollision(String),

    #[error("duplicate label `{label}` in subsystem `{subsystem}`")]
    DuplicateLabel { subsystem: String, label: String },

    #[error("subsystem index {index} out of range for {count} subsystems")]
    InvalidSubsystem { index: usize, count: usize },

    #[error("matrix is not unitary (max |U^dag U - I| = {max_deviation:e})")]
    NotUnitary { max_deviation: f64 },

    #[error("operator is not a density operator: {0}")]
    InvalidDensity(String),

    #[error("partial trace needs at least one subsystem to keep")]
    EmptyKeep,

    #[error("element `{element}` does not fit the circuit layout: {reason}")]
    Layout { element: String, reason: String },

    #[error("cannot sample from an all-zero intensity")]
    ZeroIntensity,

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
