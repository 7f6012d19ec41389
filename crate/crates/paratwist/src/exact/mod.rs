//! Exact arithmetic: rationals, cyclotomic numbers and symplectic similitudes.

mod cyclotomic;
mod gsp;
mod matrix;
mod rational;

pub use cyclotomic::{prime_power, Cyclotomic, ExactScalar};
pub use gsp::{
    a_mat, diag_j, eta, eta_j, gsp_check, l_mat, parse_matrix, realization_swap, t_n, tau, tau_j,
    u_mat, GSpMat, MatrixFixture, Realization,
};
pub use matrix::{m2, Mat2, Mat4};
pub use rational::{
    format_rational, int, is_p_integral, is_p_unit, is_prime, mod_inverse, padic_val,
    padic_val_int, parse_rational, ppow, prime_factors, rat, residue_mod_ppow, sign, to_f64,
    to_i64, totient, upow, val_i128, Rational,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not a symplectic similitude for the {0} form")]
    NotSimilitude(Realization),
    #[error("cannot multiply matrices in realizations {0} and {1}")]
    RealizationMismatch(Realization, Realization),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("expected a 4x4 matrix")]
    Shape,
    #[error("empty matrix word")]
    EmptyWord,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("cyclotomic arithmetic: {0}")]
    Cyclotomic(String),
}
