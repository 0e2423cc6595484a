use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the simulator, circuit builders and walk engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {requested} outside supported range 1..={max}")]
    OutOfRange { requested: usize, max: usize },

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("rotation angle must be finite, got {0}")]
    InvalidAngle(f64),

    #[error("{0} is not a unitary gate")]
    NotUnitary(&'static str),

    #[error("measurement branch has norm {0:e}; state is degenerate")]
    DegenerateState(f64),

    #[error("circuit has no ancilla qubit")]
    NoAncilla,

    #[error("increment of width {0} needs an ancilla qubit")]
    NeedsAncilla(usize),

    #[error("invalid noise model: {0}")]
    InvalidNoise(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown design {0:?} (valid: binary, arc, arc_walk, random_jump, random_jump_cascading)")]
    UnknownDesign(String),

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("circuit text line {line}: {message}")]
    CircuitParse { line: usize, message: String },
}
