use thiserror::Error;

/// Errors produced by graph operations, decoders and search guards.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{u}-{v} is not an edge")]
    NotAnEdge { u: u32, v: u32 },

    #[error("{op} supports at most {max} vertices, got {n}")]
    SizeCap {
        op: &'static str,
        max: usize,
        n: usize,
    },

    #[error("graph must be connected")]
    Disconnected,

    #[error("matching is not nearly perfect: {0}")]
    NotNearlyPerfect(String),

    #[error("not a matching of this graph: {0}")]
    NotAMatching(String),

    #[error("subcubic decomposition precondition failed: {0}")]
    SubcubicPrecondition(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("construction spec: {0}")]
    Spec(String),

    #[error("no valid b at n={n}: smallest admissible a={a} exceeds (n-1)/2")]
    NoValidB { n: u64, a: u64 },
}
