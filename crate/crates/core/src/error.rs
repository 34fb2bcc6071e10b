use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
///
/// Contract violations discovered while *checking* a certificate are not
/// errors; they are returned as data (lists of violations). Errors are
/// reserved for inputs that break an operation's precondition.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vertex id is not in `0..n`.
    VertexOutOfRange { vertex: usize, n: usize },
    /// A self-loop was supplied to a simple-graph constructor.
    SelfLoop { vertex: usize },
    /// A connected graph was required.
    Disconnected,
    /// A tree was required.
    NotATree,
    /// An exact oracle was asked for an instance above its size cap.
    TooLarge { n: usize, limit: usize },
    /// A supplied tree decomposition does not satisfy the axioms.
    InvalidDecomposition(String),
    /// A separator or partition bound is infeasible for the given input.
    InfeasibleBound(String),
    /// Malformed input (bad parameters, invalid witness, ...).
    InvalidInput(String),
    /// Structure metadata does not match the graph it annotates.
    StructureMismatch(String),
    /// An instance is below the validity threshold of an asymptotic bound.
    BelowThreshold(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range (n = {n})")
            }
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::Disconnected => write!(f, "graph is disconnected"),
            Error::NotATree => write!(f, "graph is not a tree"),
            Error::TooLarge { n, limit } => {
                write!(f, "instance too large for exact mode (n = {n}, limit = {limit})")
            }
            Error::InvalidDecomposition(msg) => write!(f, "invalid decomposition: {msg}"),
            Error::InfeasibleBound(msg) => write!(f, "infeasible bound: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::StructureMismatch(msg) => write!(f, "structure mismatch: {msg}"),
            Error::BelowThreshold(msg) => write!(f, "below threshold: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
