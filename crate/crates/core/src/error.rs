use alloc::string::String;

use crate::ParityClass;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("form is not positive definite (pivot {pivot} is not positive)")]
    NotPositiveDefinite { pivot: usize },
    #[error("unsupported dimension {0} (supported: 2..=6)")]
    UnsupportedDimension(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("polytope is unbounded; relevant vector set is incomplete")]
    UnboundedPolytope,
    #[error("dual cell of a {face_dim}-face spans dimension {found}, expected {expected}")]
    DualDimensionMismatch {
        face_dim: usize,
        expected: usize,
        found: usize,
    },
    #[error("ridge is shared by {tiles} tiles; expected 3 or 4")]
    MinkowskiVenkovViolation { tiles: usize },
    #[error("dual 3-cell with {points} points is not one of the five Delaunay types: {reason}")]
    UnclassifiableDual3Cell { points: usize, reason: String },
    #[error("degenerate Venkov triple {0:?}")]
    DegenerateTriple([ParityClass; 3]),
    #[error("Venkov complex needs dimension at least 4, got {0}")]
    DimensionTooSmall(usize),
    #[error("facet pair {0} -- {1} is both red and blue")]
    RedBlueConflict(ParityClass, ParityClass),
    #[error("expected red edge {0} -- {1} is missing")]
    MissingRedEdge(ParityClass, ParityClass),
    #[error("search box of radius {radius} is too small")]
    BoxTooSmall { radius: u32 },
    #[error("brute-force oracle limited to dimension {max}, got {found}")]
    OracleDimension { max: usize, found: usize },
}

impl Error {
    /// True for errors that can only arise from a violated structural theorem
    /// or an internal bug, as opposed to bad input.
    pub fn is_assertion(&self) -> bool {
        matches!(
            self,
            Error::UnboundedPolytope
                | Error::DualDimensionMismatch { .. }
                | Error::MinkowskiVenkovViolation { .. }
                | Error::UnclassifiableDual3Cell { .. }
                | Error::DegenerateTriple(_)
                | Error::RedBlueConflict(..)
                | Error::MissingRedEdge(..)
        )
    }
}
