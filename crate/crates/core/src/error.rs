use thiserror::Error;

use crate::lattice_core::LatticePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: affine span has dimension {span} in ambient dimension {ambient}")]
    DegenerateInput { span: usize, ambient: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {0} (only 2 and 3 are supported)")]
    UnsupportedDimension(usize),

    #[error("empty point set")]
    EmptyInput,

    #[error("coordinate {value} exceeds the magnitude bound {bound}")]
    CoordinateTooLarge { value: i64, bound: i64 },

    #[error("integer overflow in lattice arithmetic")]
    Overflow,

    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(LatticePoint),

    #[error("vertex {0} is not smooth")]
    NotSmoothVertex(LatticePoint),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),

    #[error("polygon has no interior lattice points")]
    NoInteriorPoints,

    #[error("polygon is not nonsingular")]
    NotNonsingular,

    #[error("basic diamond construction failed at {vertex}: {reason}")]
    DiamondConstruction {
        vertex: LatticePoint,
        reason: String,
    },

    #[error("negative exponent while expanding {point} in the chart at {vertex}")]
    NegativeExponent {
        vertex: LatticePoint,
        point: LatticePoint,
    },

    #[error("property 2-D fails at {vertex}: {} point(s) without a witness pair", unwitnessed.len())]
    PropertyFails {
        vertex: LatticePoint,
        unwitnessed: Vec<LatticePoint>,
    },

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("polytope has interior lattice points")]
    InteriorNotEmpty,

    #[error("invalid family parameters: {0}")]
    InvalidParameters(String),

    #[error("no pair of parallel facets carrying every vertex")]
    NoParallelFacetPair,

    #[error("slice at height {0} has a non-lattice vertex")]
    NonLatticeSlice(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
