use crate::key::VertexKey;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is not in graph '{graph}'")]
    UnknownVertex { vertex: VertexKey, graph: String },

    #[error("empty vertex set")]
    EmptySet,

    #[error("function has empty support")]
    EmptyFunction,

    #[error("sphere S({center},{radius}) is empty")]
    EmptySphere { center: VertexKey, radius: u64 },

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop {vertex} rejected: graphs are simple")]
    SelfLoop { vertex: i64 },

    #[error("edge list is disconnected: vertex {unreached} unreachable from {root}")]
    Disconnected { root: i64, unreached: i64 },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("heuristic search was inconclusive (not a certified negative)")]
    HeuristicInconclusive,

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
