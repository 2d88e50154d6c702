//! Cohomology of the finite subgroups with coefficients in F9[u±1], computed
//! as invariants of explicit actions on the centralizer cohomology rings.
//!
//! Every F9 bucket is viewed as an F3-space of twice the dimension so that
//! Frobenius-semilinear operators become ordinary F3-linear maps; invariants
//! are kernels of stacked `g − 1` matrices. The answers are then identified
//! with labelled free modules by evaluating each label in the ring.

mod action;
mod ring;
mod subgroup;

pub use action::{omega, phi, ActionSpec, Linearity};
pub use ring::{component_gens, u_power, Ring, RingBucket, RingElem};
pub use subgroup::{
    build_centralizer_cohomology, eigenspace_split, identify, invariants, rho_image, verify_rho_image, BucketCheck,
    CohomologyRing, Evaluation, IdentifyReport, InvariantModule, RhoReport, Subgroup, SubgroupCohomology,
    SubgroupSpec, Submodule,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("{op} does not preserve bucket {bucket:?}: image of {label} leaves it")]
    NotPreserved { op: String, label: String, bucket: (i32, i32) },
    #[error("{op} is not an involution on bucket {bucket:?}")]
    NotInvolution { op: String, bucket: (i32, i32) },
    #[error("cannot evaluate label {0}")]
    Evaluation(String),
    #[error("unknown subgroup `{0}`")]
    UnknownSubgroup(String),
    #[error(transparent)]
    Graded(#[from] crate::graded::GradedError),
}
