//! Exact computations with Jacobi-Jordan algebras over the rationals and
//! prime fields.

pub mod algebra;
pub mod coflag;
pub mod cohomology;
pub mod crossed;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod field;
pub mod format;
pub mod frobenius;
pub mod iso;
pub mod linalg;
pub mod modrep;
pub mod yangbaxter;

#[cfg(test)]
pub(crate) mod samples;

pub use algebra::{Algebra, AlgebraReport};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace};
