use thiserror::Error;

use crate::topology::PointSet;

/// Errors raised by the finite-topology modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("family does not contain the empty set")]
    MissingEmpty,
    #[error("family does not contain the full ground set")]
    MissingFull,
    #[error("family is not closed under union: {0:?} ∪ {1:?} is missing")]
    NotClosedUnderUnion(PointSet, PointSet),
    #[error("family is not closed under intersection: {0:?} ∩ {1:?} is missing")]
    NotClosedUnderIntersection(PointSet, PointSet),
    #[error("ground sets differ: {left} points vs {right} points")]
    DimensionMismatch { left: usize, right: usize },
    #[error("set {set:?} does not fit in a ground set of {n} points")]
    OutOfRange { set: PointSet, n: usize },
    #[error("{n} points exceeds the bit-set width of 64")]
    TooManyPoints { n: usize },
    #[error("n = {n} exceeds the configured limit of {limit} points (override with {})", crate::enumeration::MAX_N_ENV)]
    CapExceeded { n: usize, limit: usize },
    #[error("image table {0:?} is not a bijection")]
    NotABijection(Vec<usize>),
}
