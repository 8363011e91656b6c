//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("vertex count must be at least 2, got {0}")]
    InvalidVertexCount(usize),

    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("no connected graph found after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph is not connected")]
    Disconnected,

    #[error("qubit {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("control and target are both qubit {qubit}")]
    ControlEqualsTarget { qubit: usize },

    #[error("{what} exceeds the supported limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },

    #[error("{n_qubits} qubits exceed the simulator cap of {max}")]
    TooManyQubits { n_qubits: usize, max: usize },

    #[error("state dimensions differ: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },

    #[error("schedule does not match the graph's edges: {msg}")]
    EdgeMismatch { msg: String },

    #[error("invalid parameters: {msg}")]
    InvalidParams { msg: String },

    #[error("invalid reduction: {msg}")]
    InvalidReduction { msg: String },

    #[error("trial count must be positive")]
    InvalidTrials,

    #[error("grid resolution must be positive")]
    InvalidResolution,

    #[error("invalid device parameters: {msg}")]
    InvalidDevice { msg: String },
}
