//! The Maass lift of an index-one Jacobi cusp form to a level-one Siegel form.
//!
//! `A(n, r, m) = sum_{d | (n, r, m)} d^{k-1} c((4nm - r^2) / d^2)`.

use num_integer::Integer;

use super::jacobi::JacobiForm;
use super::FormsError;
use crate::exact::{Cyclotomic, Rational};
use crate::fourier::{CoefficientSource, FourierExpansion, Index, Window};

/// Lift coefficients computed on demand from a Jacobi table.
#[derive(Clone, Debug)]
pub struct LiftSource {
    jacobi: JacobiForm,
}

impl LiftSource {
    pub fn new(jacobi: JacobiForm) -> Self {
        LiftSource { jacobi }
    }

    pub fn jacobi(&self) -> &JacobiForm {
        &self.jacobi
    }

    /// `A(T)` as an integer, or `None` beyond the Jacobi table.
    pub fn value(&self, idx: &Index) -> Option<i128> {
        if !idx.is_definite() {
            return Some(0);
        }
        let g = idx.n.gcd(&idx.r).gcd(&idx.m) as i128;
        let disc = idx.disc();
        let k = self.jacobi.weight as u32;
        let mut acc = 0i128;
        for d in (1..=g).filter(|d| g % d == 0) {
            acc += d.pow(k - 1) * self.jacobi.by_discriminant(disc / (d * d))?;
        }
        Some(acc)
    }
}

impl CoefficientSource for LiftSource {
    fn weight(&self) -> i64 {
        self.jacobi.weight
    }

    fn level(&self) -> u64 {
        1
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        self.value(idx)
            .map(|v| Cyclotomic::rational(Rational::from_integer(v.into())))
    }
}

/// Materialize the lift on a window (level one).
pub fn gritsenko_lift(
    jacobi: &JacobiForm,
    level: u64,
    window: Window,
) -> Result<FourierExpansion, FormsError> {
    if level != 1 {
        return Err(FormsError::Unsupported(format!(
            "lifts of level {level} need Jacobi forms of index {level}"
        )));
    }
    let source = LiftSource::new(jacobi.clone());
    let mut f = FourierExpansion::new(jacobi.weight, 1, window);
    for idx in f.window.indices(1) {
        let v = source
            .value(&idx)
            .ok_or(FormsError::IncompleteTable(idx.disc()))?;
        f.insert(idx, Cyclotomic::rational(Rational::from_integer(v.into())))?;
    }
    Ok(f)
}

/// The largest discriminant a window needs from the Jacobi table.
pub fn required_disc(window: &Window) -> i128 {
    window
        .indices(1)
        .iter()
        .map(Index::disc)
        .max()
        .unwrap_or(0)
}
