//! Decision procedures built on the solver: telescopers, differential
//! algebraicity of first-order solutions, integrability of systems, and
//! the group of `σ(y) = y + f`.

pub mod da;
pub mod group;
pub mod integrability;
pub mod telescoper;

pub use da::{hypergeom_da_test, inhomog_da_classify, DACertificate, DAStatus, DAVerdict};
pub use group::{group_classify_inhomog_sum, GroupCertificate, GroupClass, GroupKind};
pub use integrability::{
    companion_matrix, integrability_test, verify_conjugate, IntegrabilityResult, IntegrabilityStatus,
};
pub use telescoper::{find_telescoper, mult_dependence_test, Telescoper};
