use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("structure constants are not antisymmetric at (i={i}, j={j}, k={k})")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error("conflicting entries for bracket [e{i}, e{j}]")]
    BracketConflict { i: usize, j: usize },

    #[error("not a Lie algebra: Jacobi identity fails on basis triple {triple:?}")]
    InvalidAlgebra { triple: (usize, usize, usize) },

    #[error("malformed split: {0}")]
    MalformedSplit(String),

    #[error("not an almost complex structure: {0}")]
    NotAlmostComplex(String),

    #[error("frame is not orthonormal")]
    NonOrthonormalFrame,

    #[error("family {family} constraint violated: {constraint}")]
    FamilyConstraint { family: String, constraint: String },

    #[error("family {family} expects {expected} parameters, got {found}")]
    FamilyArity {
        family: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown family `{0}` (expected g1..g20)")]
    UnknownFamily(String),

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("normalizing rotation is irrational; rerun in approximate mode")]
    IrrationalRotation,

    #[error("constraint residuals do not vanish (system {0})")]
    ResidualsNonzero(&'static str),

    #[error("classification gap: {0}")]
    ClassificationGap(String),

    #[error("cannot parse `{0}` as a rational (expected p/q or an integer)")]
    ParseRational(String),

    #[error("out of range: {0}")]
    OutOfRange(String),
}
