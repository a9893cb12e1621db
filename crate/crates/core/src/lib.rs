//! Combinatorial objects of the rank filtration of algebraic K-theory over
//! small finite fields, with exact integral homology.
//!
//! The integral linear algebra is generic over [`ExactInt`]; the aliases
//! below fix the two instantiations the library uses.

pub mod building;
pub mod cbc;
pub mod complex;
pub mod error;
pub mod export;
pub mod field;
pub mod filtration;
pub mod homology;
pub mod linalg;
pub mod milnor;
pub mod rankss;
pub mod scalar;
pub mod snf;

pub use complex::{order_complex, SimplicialComplex};
pub use error::{Error, Result};
pub use field::{Elem, FqField, Units};
pub use homology::{homology, AbelianGroup, HomologyResult, IntegerChainComplex};
pub use linalg::{MatrixFq, SubspaceFq};
pub use scalar::{ExactInt, Overflow};
pub use snf::{SmithForm, SmithInvariants, SparseMatrix};

/// Dense integer matrix at machine width.
pub type IntMatrix64 = snf::IntMatrix<i64>;
/// Dense integer matrix at arbitrary precision.
pub type IntMatrixBig = snf::IntMatrix<num_bigint::BigInt>;
/// Smith form at machine width; produced by [`snf::smith_dense_in`].
pub type SmithForm64 = SmithForm<i64>;
/// Smith form at arbitrary precision; what [`snf::smith_dense`] returns.
pub type SmithFormBig = SmithForm<num_bigint::BigInt>;
