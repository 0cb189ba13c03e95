use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by graph construction, simulation, metrics and the sweep
/// harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("node index {node} out of range for a graph of {n} nodes")]
    IndexOutOfRange { node: usize, n: usize },
    #[error("edge ({i}, {j}) listed with conflicting signs")]
    ConflictingEdgeSign { i: usize, j: usize },
    #[error("self-loop on node {node}: the diagonal is implicit")]
    SelfLoopRejected { node: usize },
    #[error("edge ({i}, {j}) has sign {sign}; expected -1 or +1")]
    InvalidSign { i: usize, j: usize, sign: i8 },
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("group count {k} invalid for {n} nodes")]
    InvalidGroupCount { k: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("operation requires a graph without repulsive edges")]
    NegativeEdgePresent,
    #[error("non-finite opinion at node {node}")]
    NonFiniteOpinion { node: usize },
    #[error("initial opinions have zero width")]
    DegenerateInitialState,
    #[error("group metrics require at least two non-empty groups")]
    SingleGroup,
    #[error("out-group distance is zero; proportional spread undefined")]
    ZeroOutGroupDistance,
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed graph file: {0}")]
    MalformedGraphFile(String),
    #[error("malformed trajectory file: {0}")]
    MalformedTrajectory(String),
    #[error("malformed sweep data: {0}")]
    MalformedSweepData(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
