use std::fmt;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} does not exist")]
    InvalidVertex(usize),
    #[error("edge {0} does not exist")]
    InvalidEdge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("{what} exceeds the limit of {limit} (got {actual})")]
    DeskScale { what: &'static str, limit: usize, actual: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A precondition failed and the offending vertices or edges are known.
    #[error("precondition failed: {msg}")]
    Witnessed { msg: String, vertices: Vec<usize>, edges: Vec<usize> },
    #[error("no solution: {0}")]
    Unsat(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn pre(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub(crate) fn internal(msg: impl fmt::Display) -> Self {
        Error::Internal(msg.to_string())
    }

    pub(crate) fn witnessed(msg: impl fmt::Display, vertices: Vec<usize>, edges: Vec<usize>) -> Self {
        Error::Witnessed { msg: msg.to_string(), vertices, edges }
    }

    pub(crate) fn parse(line: usize, msg: impl fmt::Display) -> Self {
        Error::Parse { line, msg: msg.to_string() }
    }

    /// True for the size-limit refusals of the exhaustive routines.
    pub fn is_desk_scale(&self) -> bool {
        matches!(self, Error::DeskScale { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size ceilings for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: 16, max_edges: 32 }
    }
}

impl Limits {
    pub(crate) fn check(&self, vertices: usize, edges: usize) -> Result<()> {
        if vertices > self.max_vertices {
            return Err(Error::DeskScale { what: "vertex count", limit: self.max_vertices, actual: vertices });
        }
        if edges > self.max_edges {
            return Err(Error::DeskScale { what: "edge count", limit: self.max_edges, actual: edges });
        }
        Ok(())
    }
}
