use alloc::string::String;

use crate::graph::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("divisor is not effective: coefficient {index} is negative")]
    NotEffective { index: usize },

    #[error("dimension {0} > 2 requires explicit theta degrees")]
    MissingThetaDegrees(u32),

    #[error("inconsistent graph: {0}")]
    InconsistentGraph(String),

    #[error("graph failed validation:\n{0}")]
    Invalid(ValidationReport),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "{vertices} vertices exceed the ray enumeration limit of {limit}; use sampling instead"
    )]
    Capacity { vertices: usize, limit: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
