//! Exact arithmetic for generalized Jacobi matrices.
//!
//! The crate covers the band algebra `J(k)` with quasi-polynomial diagonals,
//! its Japanese-cocycle central extension and classical embeddings, exact
//! homology engines for finite-dimensional Lie and associative algebras, and
//! rank/trace densities of periodic band matrices.
//!
//! Everything is generic over an exact [`Field`]; the aliases below fix the
//! default scalar to arbitrary-precision rationals.

pub mod assoc;
pub mod band;
pub mod central;
pub mod error;
pub mod hochschild;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod poly;
pub mod quasi;
pub mod rank;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rationals.
pub type Scalar = num_rational::BigRational;
pub type Poly = poly::Poly<Scalar>;
pub type QuasiPolyTail = quasi::QuasiPolyTail<Scalar>;
pub type QuasiPolySeq = quasi::QuasiPolySeq<Scalar>;
pub type BandMatrix = band::BandMatrix<Scalar>;
pub type DenseMatrix = linalg::DenseMatrix<Scalar>;
pub type SparseMatrix = linalg::SparseMatrix<Scalar>;
pub type ExtElement = central::ExtElement<Scalar>;
pub type WSymbol = central::WSymbol<Scalar>;
pub type FinAssocAlg = assoc::FinAssocAlg<Scalar>;
pub type GroupAction = assoc::GroupAction<Scalar>;
pub type FinLieAlg = lie::FinLieAlg<Scalar>;
pub type RankReport = rank::RankReport<Scalar>;
