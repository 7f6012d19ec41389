//! Truncated Fourier expansions in degree two and degree one.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::index::{Index, Window};
use super::FourierError;
use crate::exact::{Cyclotomic, Rational};

/// Anything that can report Fourier coefficients of a weight-`k` form.
pub trait CoefficientSource: Sync {
    fn weight(&self) -> i64;
    fn level(&self) -> u64;
    /// The coefficient at `idx`, or `None` when it is not known.
    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic>;
}

/// A sparse truncated expansion `sum a(T) e(tr(TZ))` of a Siegel form.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierExpansion {
    pub weight: i64,
    pub level: u64,
    pub coefficients: BTreeMap<Index, Cyclotomic>,
    pub window: Window,
}

impl FourierExpansion {
    pub fn new(weight: i64, level: u64, window: Window) -> Self {
        FourierExpansion {
            weight,
            level,
            coefficients: BTreeMap::new(),
            window,
        }
    }

    /// Store a coefficient; zeros are dropped.
    pub fn insert(&mut self, idx: Index, value: Cyclotomic) -> Result<(), FourierError> {
        if !value.is_zero() && !idx.is_semidefinite() {
            return Err(FourierError::Indefinite(idx));
        }
        if value.is_zero() {
            self.coefficients.remove(&idx);
        } else {
            self.coefficients.insert(idx, value);
        }
        Ok(())
    }

    pub fn get(&self, idx: &Index) -> Cyclotomic {
        self.coefficients
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::from_i64(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Order of the smallest cyclotomic field holding every coefficient.
    pub fn cyclotomic_order(&self) -> u64 {
        self.coefficients
            .values()
            .filter(|c| c.to_rational().is_none())
            .map(Cyclotomic::order)
            .max()
            .unwrap_or(1)
    }

    /// `a F + b G` on the intersection of the windows.
    pub fn combine(
        &self,
        a: &Cyclotomic,
        other: &FourierExpansion,
        b: &Cyclotomic,
    ) -> Result<FourierExpansion, FourierError> {
        if self.weight != other.weight || self.level != other.level {
            return Err(FourierError::Incompatible);
        }
        let window = self.window.intersect(&other.window, self.level);
        let mut out = FourierExpansion::new(self.weight, self.level, window);
        for idx in self.coefficients.keys().chain(other.coefficients.keys()) {
            if !out.window.contains(idx) || out.coefficients.contains_key(idx) {
                continue;
            }
            let v = a
                .try_mul(&self.get(idx))?
                .try_add(&b.try_mul(&other.get(idx))?)?;
            out.insert(*idx, v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, a: &Cyclotomic) -> Result<FourierExpansion, FourierError> {
        let mut out = FourierExpansion::new(self.weight, self.level, self.window.clone());
        for (idx, v) in &self.coefficients {
            out.insert(*idx, a.try_mul(v)?)?;
        }
        Ok(out)
    }

    /// Indices in both windows where the two expansions differ.
    pub fn differences(&self, other: &FourierExpansion) -> Vec<Index> {
        let window = self.window.intersect(&other.window, self.level.min(other.level));
        match window {
            Window::List(set) => set
                .into_iter()
                .filter(|i| self.get(i) != other.get(i))
                .collect(),
            Window::Box { .. } => unreachable!("intersections are lists"),
        }
    }

    /// Whether every nonzero coefficient sits on the level-`N` lattice.
    pub fn support_lattice_check(&self, level: u64) -> bool {
        self.coefficients.keys().all(|i| i.on_level(level))
    }

    /// The largest `|a(T)| / det(2T)^{k/2}` over stored definite indices.
    pub fn growth_constant(&self) -> f64 {
        let k = self.weight as f64;
        self.coefficients
            .iter()
            .filter(|(i, _)| i.is_definite())
            .map(|(i, v)| v.to_complex().norm() / (i.disc() as f64).powf(k / 2.0))
            .fold(0.0, f64::max)
    }
}

/// Copy the coefficients of `source` on `window` into an expansion.
///
/// Indices the source cannot supply are dropped from the window.
pub fn materialize(source: &dyn CoefficientSource, window: &Window) -> FourierExpansion {
    let level = source.level();
    let indices = window.indices(level);
    let values: Vec<Option<Cyclotomic>> = indices
        .par_iter()
        .map(|i| source.coefficient(i))
        .collect();
    let complete = values.iter().all(Option::is_some);
    let known = indices
        .iter()
        .zip(&values)
        .filter(|(_, v)| v.is_some())
        .map(|(i, _)| *i);
    let w = if complete {
        window.clone()
    } else {
        Window::List(known.collect())
    };
    let mut f = FourierExpansion::new(source.weight(), level, w);
    for (i, v) in indices.into_iter().zip(values) {
        if let Some(v) = v.filter(|v| !v.is_zero()) {
            f.coefficients.insert(i, v);
        }
    }
    f
}

impl CoefficientSource for FourierExpansion {
    fn weight(&self) -> i64 {
        self.weight
    }

    fn level(&self) -> u64 {
        self.level
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        if !idx.is_semidefinite() || !idx.on_level(self.level) {
            return Some(Cyclotomic::from_i64(0));
        }
        self.window.contains(idx).then(|| self.get(idx))
    }
}

/// A level-one expansion of even weight read through `GL(2, Z)` reduction:
/// an index is known when it or its reduced representative lies in the window.
pub struct ReducedLookup<'a> {
    f: &'a FourierExpansion,
}

impl<'a> ReducedLookup<'a> {
    /// `None` unless the level is one and the weight even.
    pub fn new(f: &'a FourierExpansion) -> Option<Self> {
        (f.level == 1 && f.weight % 2 == 0).then_some(ReducedLookup { f })
    }
}

impl CoefficientSource for ReducedLookup<'_> {
    fn weight(&self) -> i64 {
        self.f.weight
    }

    fn level(&self) -> u64 {
        1
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        self.f
            .coefficient(idx)
            .or_else(|| self.f.coefficient(&idx.reduced()))
    }
}

/// A truncated `q`-expansion `sum_{n <= D} a_n q^n` of an elliptic form.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticExpansion {
    pub weight: i64,
    pub level: u64,
    /// `coefficients[n] = a_n` for `0 <= n <= D`.
    pub coefficients: Vec<Cyclotomic>,
}

impl EllipticExpansion {
    pub fn from_integers(weight: i64, level: u64, coeffs: &[i128]) -> Self {
        EllipticExpansion {
            weight,
            level,
            coefficients: coeffs
                .iter()
                .map(|&c| Cyclotomic::rational(Rational::from_integer(c.into())))
                .collect(),
        }
    }

    pub fn truncation(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Cyclotomic {
        self.coefficients
            .get(n)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::from_i64(0))
    }

    pub fn cyclotomic_order(&self) -> u64 {
        self.coefficients
            .iter()
            .filter(|c| c.to_rational().is_none())
            .map(Cyclotomic::order)
            .max()
            .unwrap_or(1)
    }

    pub fn scale(&self, a: &Cyclotomic) -> Result<EllipticExpansion, FourierError> {
        Ok(EllipticExpansion {
            weight: self.weight,
            level: self.level,
            coefficients: self
                .coefficients
                .iter()
                .map(|c| a.try_mul(c))
                .collect::<Result<_, _>>()?,
        })
    }

    /// Numerical value at `z` in the upper half plane.
    pub fn evaluate(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        let q = (num_complex::Complex64::i() * std::f64::consts::TAU * z).exp();
        let mut acc = num_complex::Complex64::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * q + c.to_complex();
        }
        acc
    }
}
