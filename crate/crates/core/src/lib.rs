//! Generalized Choi maps `Φ_A(X) = Δ_A(X) − X` on `M_n`.
//!
//! The crate builds the map and its Choi matrix from a nonnegative
//! coefficient matrix, evaluates the known analytic criteria for positivity,
//! complete positivity and decomposability, and searches for numerical
//! certificates: product vectors on which the Choi matrix is negative (the map
//! is not positive) and PPT states with negative trace pairing (the map is
//! indecomposable).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod criteria;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod search;

pub use error::{Error, Result};
