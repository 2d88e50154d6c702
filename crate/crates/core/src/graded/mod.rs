//! Monomial-labelled bigraded vector spaces. Degrees are (s, t) with stem
//! t − s throughout.

mod generators;
mod module;
mod monomial;

pub use generators::{Gen, GenKind, GeneratorDecl, GENERATORS, NGEN};
pub use module::{base, free_module_span, monomials_in_bidegree, Axis, BigradedModule, BucketJson, ModuleJson, Window};
pub use monomial::{lift, Monomial, Poly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GradedError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent in `{0}`")]
    BadExponent(String),
    #[error("`{0}` is zero")]
    ZeroMonomial(String),
    #[error("`{0}` normalizes with sign -1; not a canonical label")]
    NegativeLabel(String),
    #[error("{label} has bidegree {actual:?}, not {key:?}")]
    BucketMismatch { label: String, key: (i32, i32), actual: (i32, i32) },
    #[error("base ring generator must be a single generator power, got `{0}`")]
    BaseGenerator(String),
    #[error("periodicity: {0}")]
    Periodicity(String),
}

/// `t − s` of a normalized monomial.
pub fn stem_of(m: &Monomial) -> i32 {
    m.stem()
}
