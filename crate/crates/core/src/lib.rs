//! Exact constructions around characteristic sets of matroids: finite fields
//! and skew polynomial rings, subspaces and their matroids, equation systems,
//! Frobenius flocks, Brylawski matrices and prime densities.

pub mod algebra;
pub mod arith;
pub mod brylawski;
pub mod density;
pub mod eqsys;
pub mod error;
pub mod flock;
pub mod linalg;
pub mod matroid;
pub mod serial;

pub use algebra::{FieldElement, GaloisField, IntPolynomial, Rationals, SkewPolyRing, SkewPolynomial};
pub use eqsys::EquationSystem;
pub use error::{Error, Result};
pub use flock::{Flock, Window};
pub use linalg::{RationalMatrix, Subspace};
pub use matroid::Matroid;
