use crate::graphdb::{EdgeId, NodeId};

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("invalid symbol {0:?}: symbols are single characters in [a-z0-9]")]
    InvalidSymbol(char),
    #[error("automaton too large: more than {cap} states")]
    StateCap { cap: usize },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("edge id {0} out of range")]
    UnknownEdge(EdgeId),
    #[error("edge at index {index} does not start where the previous edge ends")]
    NotAdjacent { index: usize },
    #[error("edge at index {index} repeats an earlier edge")]
    RepeatedEdge { index: usize },
    #[error("trail does not start at node {expected}")]
    WrongAnchor { expected: NodeId },
    #[error("run of the automaton reaches the rejecting sink at edge index {index}")]
    DeadRun { index: usize },
    #[error("instance too large for the oracle: {edges} edges, limit {limit}")]
    OracleGuard { edges: usize, limit: usize },
    #[error("summary engine exceeded its budget of {budget} search steps; use the brute engine")]
    BudgetExceeded { budget: u64 },
    #[error("summary engine requires a language in Ttract")]
    NotTtract,
    #[error("dc engine requires a downward-closed language")]
    NotDownwardClosed,
    #[error("language is in Ttract and has no hardness witness")]
    NoWitness,
    #[error("invalid hardness witness: {0}")]
    InvalidWitness(String),
    #[error("node name {0:?} is reserved for gadget construction")]
    ReservedName(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
