//! Hecke operators `T(1,1,l,l)`, `T(1,l,l,l^2)` and the Atkin-Lehner element.

mod action;
mod commutation;
mod cosets;

pub use action::{
    apply_atkin_lehner_numeric, apply_hecke_numeric, apply_t1, apply_t2_numeric, normalization,
    t1_terms, T1Source,
};
pub use commutation::{
    commutation_suite, verify_t1_relation, CommutationOptions, CommutationReport, RelationReport,
};
pub use cosets::{
    coset_reps, global_reps, verify_cosets, verify_double_coset_membership,
    verify_global_disjoint, verify_left_disjoint, CosetFamily, CosetReport, DisjointReport,
    DivisorReport, HeckeOp,
};

use thiserror::Error;

use crate::fourier::FourierError;
use crate::twist::TwistError;

#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("level {level} is divisible by {ell}; use the numeric path")]
    NumericOnly { ell: u64, level: u64 },
    #[error("representatives at {ell} are only built for levels prime to {ell} or powers of {ell}, got {level}")]
    MixedLevel { ell: u64, level: u64 },
    #[error("{0} must differ from the twisting prime")]
    SamePrime(u64),
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Twist(#[from] TwistError),
}
