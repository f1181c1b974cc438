//! Normalized 4-dimensional conformal foliations with minimal leaves: the
//! parameter space, the catalog of families, the Jacobi constraint systems,
//! the case classification and frame normalization.

mod catalog;
mod classify;
mod normalize;
mod params;
mod residuals;

pub use catalog::{family, FamilyId, FamilyInstance};
pub use classify::{classify, discriminants, Case, CaseTag, Classification, Discriminants};
pub use normalize::{normalize_frame, Normalization};
pub use params::{assemble, Params4D, FRAME_LABELS, PARAM_NAMES, W, X, Y, Z};
pub use residuals::{
    constraint_residuals, ResidualSet, ResidualSystem, CASE_A, CASE_B, DERIVED_ADJOINT,
    QUADRATIC_MATRIX, SYMMETRIC_SYSTEM, THETA_SYSTEM, VERTICAL_MATRIX,
};
