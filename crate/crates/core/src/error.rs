use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("classical bit {clbit} out of range for a {num_clbits}-bit register")]
    ClbitOutOfRange { clbit: usize, num_clbits: usize },

    #[error("operation uses qubit {0} more than once")]
    DuplicateQubit(usize),

    #[error("{requested} qubits exceeds the simulator cap of {cap} (set ONECIRCUIT_MAX_QUBITS to raise it)")]
    TooManyQubits { requested: usize, cap: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error(
        "measurement of qubit {qubit} has total probability {probability:e}; state is corrupted"
    )]
    Unnormalizable { qubit: usize, probability: f64 },

    #[error("program has a mid-circuit measurement, reset or classical draw; aggregate over enumerate_branches instead")]
    MidCircuitMeasurement,

    #[error("branch enumeration exceeded the cap of {0} branches")]
    BranchExplosion(usize),

    #[error("invalid ansatz configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot encode the all-zeros vector")]
    ZeroVector,

    #[error("cannot encode an empty vector")]
    EmptyInput,

    #[error(
        "input dimension {found} does not match {expected} amplitudes for {num_qubits} qubits"
    )]
    DimensionMismatch {
        expected: usize,
        found: usize,
        num_qubits: usize,
    },

    #[error("label {label} out of range for {num_outcomes} outcomes")]
    LabelOutOfRange { label: usize, num_outcomes: usize },

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("shot plan is for n = {plan} parameters but the ansatz has {ansatz}")]
    PlanMismatch { plan: usize, ansatz: usize },

    #[error("insufficient shots for cost index {0}: no shot landed in its bucket")]
    InsufficientShots(usize),

    #[error("shot activated {count} blocks (bits {blocks:?}); at most one may fire")]
    MultipleActivations { count: usize, blocks: Vec<usize> },

    #[error("shot record has {found} bits, layout expects {expected}")]
    RecordLength { expected: usize, found: usize },

    #[error("branch oracle mismatch: {0}")]
    OracleMismatch(String),

    #[error("gate is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("supplied inverse does not invert the base gate (deviation {0:e})")]
    InverseMismatch(f64),

    #[error("block {block} out of range for {num_blocks} blocks")]
    BlockOutOfRange { block: usize, num_blocks: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset vectors have inconsistent dimensions ({0} vs {1})")]
    RaggedDataset(usize, usize),

    #[error("IDX file {path}: {reason}")]
    Idx { path: PathBuf, reason: String },

    #[error("report schema version {found} is not supported (expected {expected})")]
    SchemaVersion { expected: u32, found: u64 },

    #[error("report schema error: {0}")]
    Schema(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
