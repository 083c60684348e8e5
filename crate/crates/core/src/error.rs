use thiserror::Error;

use crate::mask::SubsetMask;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside [1, {m}]")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("vertex {0} appears in no facet")]
    GhostVertex(usize),

    #[error("ground set size {0} is outside [1, 30]")]
    BadGroundSet(usize),

    #[error("{0} is not a vertex of the complex")]
    NotAVertex(usize),

    #[error("face {0} is already present")]
    FaceAlreadyPresent(SubsetMask),

    #[error("boundary face {0} is missing")]
    BoundaryMissing(SubsetMask),

    #[error("bad simplex {0}: need at least two vertices inside the ground set")]
    BadSigma(SubsetMask),

    #[error("vertex {vertex} is not in {subset}")]
    NotInSubset { vertex: usize, subset: SubsetMask },

    #[error("ground set size {m} exceeds the configured limit {limit}")]
    ResourceLimit { m: usize, limit: usize },

    #[error("hypotheses of the gluing theorem do not hold")]
    NotApplicable,

    #[error("{0} is not an odd prime below 2^31")]
    BadPrime(u64),

    #[error("invalid permutation of [1, {0}]")]
    BadPermutation(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Stable identifier used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::GhostVertex(_) => "GhostVertex",
            Error::BadGroundSet(_) => "BadGroundSet",
            Error::NotAVertex(_) => "NotAVertex",
            Error::FaceAlreadyPresent(_) => "FaceAlreadyPresent",
            Error::BoundaryMissing(_) => "BoundaryMissing",
            Error::BadSigma(_) => "BadSigma",
            Error::NotInSubset { .. } => "NotInSubset",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::NotApplicable => "NotApplicable",
            Error::BadPrime(_) => "BadPrime",
            Error::BadPermutation(_) => "BadPermutation",
            Error::Parse(_) => "ParseError",
            Error::InternalInconsistency(_) => "InternalInconsistency",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
