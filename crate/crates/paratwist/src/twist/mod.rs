//! Twisting of paramodular forms: local coset identities, global families and
//! the action on Fourier expansions.

pub mod apply;
pub mod families;
pub mod gl2;
pub mod identities;
pub mod local;
pub mod verify;

pub use apply::{apply_twist, oracle_forward, ForwardResult, TwistPlan, TwistSource};
pub use families::{theorem_family, verify_theorem_corollary, Family, Monomial, PNum};
pub use identities::{identity, lemma_p3, reparametrization_complement, Identity, IDENTITY_NAMES};
pub use local::{discretize_into, find_depths, legendre, stability_check, Domain, LocalTerm, Var};
pub use verify::{verify_identity, IdentityReport, LocalOptions, TermReport};

use crate::cosets::CosetError;

#[derive(Debug, thiserror::Error)]
pub enum TwistError {
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error("discretization of {0} does not stabilize")]
    Unstable(String),
    #[error("family index {0} outside 1..=14")]
    FamilyIndex(usize),
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
    #[error("{0} is not an odd prime")]
    BadPrime(u64),
    #[error("p = {0} divides the level {1}")]
    LevelNotCoprime(u64, u64),
    #[error("plan weight {0} differs from form weight {1}")]
    WeightMismatch(i64, i64),
    #[error("input coefficients must be rational")]
    NonRationalInput,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
