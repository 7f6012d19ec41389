//! Cosets of the maximal compact subgroup and their formal sums.

mod key;
mod residue;

pub use key::{coset_key, CosetKey, CosetSum};
pub use residue::{working_precision, PAdicCtx, PEntry, ResidueMat, Zp};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CosetError {
    #[error("working precision exhausted while computing a coset label")]
    Precision,
}
