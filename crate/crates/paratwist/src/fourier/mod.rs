//! Truncated Fourier expansions of Siegel and elliptic modular forms.

mod expansion;
mod index;
mod io;
mod numeric;
mod slash;

pub use expansion::{materialize, CoefficientSource, EllipticExpansion, FourierExpansion, ReducedLookup};
pub use index::{raw_from_mat, raw_on_level, Index, RawIndex, Window};
pub use io::{from_json, load_expansion, save_expansion, to_json, Expansion, FORMAT_VERSION};
pub use numeric::{act, evaluate, point, reduce_level_one, relative_deviation, slash_numeric, Evaluation, C2};
pub use slash::{
    compose_monomials, root_of_unity, slash_monomial, slash_sum, slash_upper, SlashOutput,
    UpperBlock,
};

pub(crate) use index::isqrt;

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error)]
pub enum FourierError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("root of unity of order {0} is not supported")]
    UnsupportedRoot(String),
    #[error("element is not block upper triangular")]
    NotUpperBlock,
    #[error("multiplier or determinant must be positive")]
    NegativeMultiplier,
    #[error("index {0:?} is not positive semidefinite")]
    Indefinite(Index),
    #[error("expansions have different weight or level")]
    Incompatible,
    #[error("point is not in the Siegel upper half space")]
    NotInHalfSpace,
    #[error("window insufficient: tail {tail:e} against value {value:e}")]
    WindowInsufficient { tail: f64, value: f64 },
    #[error("unsupported format version {0:?}")]
    Version(Option<u64>),
    #[error("malformed expansion file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
