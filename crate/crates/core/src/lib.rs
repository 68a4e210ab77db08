//! Determinants and adjoints of dense matrices over commutative rings.
//!
//! The determinant comes from a baby-steps/giant-steps Krylov
//! algorithm ([`krylov`]); the adjoint is its hand-differentiated reverse
//! pass ([`adjoint`]). Over rings without division the same pair runs on a
//! perturbed matrix over truncated power series ([`division_free`]).
//! [`slp`] and [`oracle`] hold independent reference implementations.
#![allow(clippy::wrong_self_convention, clippy::type_complexity, clippy::needless_range_loop)]


pub mod adjoint;
pub mod algebra;
pub mod division_free;
pub mod error;
pub mod hankel;
pub mod krylov;
pub mod matrix;
pub mod minpoly;
pub mod oracle;
pub mod pipeline;
pub mod scaling;
pub mod slp;

pub use adjoint::{AdjointOptions, Strategy};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use pipeline::{field_adjoint, field_determinant, field_inverse, FieldOptions};
