use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("monoid is not sharp: {0}")]
    NotSharp(String),
    #[error("not a face of the monoid")]
    NotAFace,
    #[error("uniformizer maps to zero")]
    ZeroUniformizer,
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("cones do not form a subdivision: {0}")]
    NotASubdivision(String),
    #[error("inconsistent stratification: {0}")]
    InconsistentStratification(String),
    #[error("no branch rule supplied for a product of two non-semistable fans")]
    MissingBranchRule,
    #[error("ray lies outside the cone: {0}")]
    RayOutsideCone(String),
    #[error("resolution did not terminate within {0} subdivisions")]
    ResolutionCapExceeded(usize),
    #[error("not a product fan: {0}")]
    NotAProductFan(String),
    #[error("divisor has a component outside the fan: {0}")]
    UnsupportedDivisorComponent(String),
    #[error("divisor is not Q-Cartier at {0}")]
    NotQCartier(String),
    #[error("empty list of forms")]
    EmptyFormList,
    #[error("complex has an unbounded face: {0}")]
    UnboundedFace(String),
    #[error("size cap exceeded: {what} ({count} > {cap})")]
    SizeCapExceeded {
        what: String,
        count: usize,
        cap: usize,
    },
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
