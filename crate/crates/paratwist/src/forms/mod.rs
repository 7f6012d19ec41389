//! Concrete test forms: `Delta`, Eisenstein series, index-one Jacobi forms
//! and their lifts.
//!
//! The Jacobi and lift constructions are classical and independent of the
//! twisting machinery; they only supply inputs.

mod elliptic;
mod jacobi;
mod lift;
mod product;

pub use elliptic::{delta_qexp, eisenstein_coeffs, eisenstein_qexp, eta_product, sigma};
pub use jacobi::{
    bernoulli_numbers, cohen, fundamental_part, hurwitz_class_number, jacobi_eisenstein,
    kronecker, phi10, phi10_oracle, JacobiForm,
};
pub use lift::{gritsenko_lift, required_disc, LiftSource};
pub use product::ProductSource;

use thiserror::Error;

use crate::fourier::FourierError;

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-integral coefficient in {0}")]
    NotIntegral(String),
    #[error("coefficient overflow")]
    Overflow,
    #[error("Jacobi table does not reach discriminant {0}")]
    IncompleteTable(i128),
    #[error(transparent)]
    Fourier(#[from] FourierError),
}
