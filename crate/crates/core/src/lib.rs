//! Symbolic and numeric tools for Laguerre analysis on the cone of
//! positive-definite Hermitian matrices: exact polynomial calculus on
//! Herm(n), spherical polynomials, the Lie-algebra differential operators,
//! and quadrature-based invariant integration.

pub mod combinatorics;
pub mod error;
pub mod integration;
pub mod laguerre;
pub mod matrixcalc;
pub mod polyalgebra;
pub mod rational;
pub mod report;
pub mod suites;

pub use error::{HermlagError, Result};
