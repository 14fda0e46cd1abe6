//! Exact-arithmetic workbench for finite A∞-categories, filtered A∞-algebras,
//! their Auslander categories, twisted-complex modules and Hochschild
//! deformations.

pub mod ainf;
pub mod auslander;
pub mod corpus;
pub mod filtration;
pub mod format;
pub mod functor;
pub mod hochschild;
pub mod linalg;
pub mod par;
pub mod perfmod;
pub mod random;
pub mod report;
pub mod scalar;

pub use ainf::{AInfCategory, AInfError, BasisElement, CategoryBuilder, Terms};
pub use report::{Check, ValidationReport, Witness};
pub use scalar::{ExactField, Scalar, ScalarError};
