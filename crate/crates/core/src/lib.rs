//! Exact F3/F9 machinery for K(2)-local computations at the prime 3.
//!
//! The crate is organised bottom-up: [`field`] and [`linalg`] provide exact
//! arithmetic, [`graded`] the monomial-labelled bigraded modules, and
//! [`cohomology`], [`specseq`], [`resolution`] and [`picard`] the actual
//! computations. [`chart`] renders homotopy tables and [`verify`] bundles the
//! end-to-end checks used by the CLI.

pub mod field;
pub mod graded;
pub mod cohomology;
pub mod linalg;
pub mod specseq;
pub mod resolution;
pub mod picard;
pub mod chart;
pub mod verify;

pub use field::{BaseField, Field, F3, F9};
pub use graded::{BigradedModule, Gen, Monomial, Window};
pub use linalg::{Matrix, Subspace};

pub type F3Matrix = Matrix<F3>;
pub type F9Matrix = Matrix<F9>;
pub type F3Subspace = Subspace<F3>;
pub type F9Subspace = Subspace<F9>;
