//! Left-invariant Riemannian geometry of Lie algebras given by structure
//! constants in an orthonormal frame: Levi-Civita connection and curvature,
//! foliation predicates of a coordinate splitting, adapted Hermitian
//! structures, and the catalog of 4-dimensional conformal foliations with
//! minimal leaves of codimension two.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod families;
pub mod foliation;
pub mod geometry;
pub mod hermitian;
pub mod sample;
pub mod scalar;
pub mod series;

pub use algebra::{StructureConstants, Vector};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
