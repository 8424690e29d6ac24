//! Exact computations with Artinian local rings, their modules and free
//! resolutions, graded-commutative algebras, and hypersurface matrix
//! factorizations.

pub mod accept;
pub mod error;
pub mod gallery;
pub mod homology;
pub mod hypersurface;
pub mod matrix;
pub mod module;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod skew;
pub mod sparse;
pub mod spec_io;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use module::FModule;
pub use poly::MultiPoly;
pub use ring::FiniteCommutativeAlgebra;
pub use scalar::{Field, Scalar};
pub use skew::GradedSkewAlgebra;
pub use sparse::{SparseEchelon, SparseVec};
