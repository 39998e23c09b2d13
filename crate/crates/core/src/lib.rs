//! Finite-dimensional local algebras, minimal free resolutions of their
//! residue fields, and exact Poincare series arithmetic.
//!
//! The crate builds the almost stretched Artinian Gorenstein algebras
//! together with the auxiliary rings used to compute their Poincare series,
//! counts Betti numbers by brute-force resolution, and checks the results
//! against the closed form `(1 + z)^d / (1 - h z + z^2)` obtained from the
//! change-of-rings transforms in [`series`].

pub mod algebra;
pub mod classify;
pub mod error;
pub mod field;
pub mod linalg;
pub mod resolution;
pub mod series;

pub use algebra::{AlgebraElement, AlmostStretchedParams, FiniteLocalAlgebra, HilbertFunction, MonomialLabel};
pub use field::{Field, Fp, GroundField, Scalar};
pub use linalg::{Matrix, SparseVec, Subspace};
pub use series::{IntPolynomial, RationalSeries};
