//! Hecke operators and the Atkin-Lehner element acting on expansions.

use std::collections::HashMap;
use std::sync::RwLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::cosets::{global_reps, HeckeOp};
use super::HeckeError;
use crate::exact::{int, padic_val, ppow, Cyclotomic, GSpMat};
use crate::fourier::{
    slash_numeric, slash_sum, CoefficientSource, FourierError, Evaluation, FourierExpansion, Index, UpperBlock,
    C2,
};
use crate::groups::atkin_lehner_with_lift;

fn level_val(level: u64, ell: u64) -> i64 {
    padic_val(&int(level as i64), ell).unwrap_or(0)
}

/// Normalization `l^{k-3}` (T1) or `l^{2(k-3)}` (T2).
pub fn normalization(op: HeckeOp, ell: u64, weight: i64) -> crate::exact::Rational {
    match op {
        HeckeOp::T1 => ppow(ell, weight - 3),
        HeckeOp::T2 => ppow(ell, 2 * (weight - 3)),
    }
}

/// The weighted block upper triangular terms of `T(1,1,l,l)` at a level prime to `l`.
pub fn t1_terms(ell: u64, weight: i64) -> Result<Vec<(Cyclotomic, UpperBlock)>, HeckeError> {
    let c = Cyclotomic::rational(normalization(HeckeOp::T1, ell, weight));
    global_reps(HeckeOp::T1, ell, 0)
        .iter()
        .map(|g| Ok((c.clone(), UpperBlock::new(g, weight)?)))
        .collect()
}

fn check_exact(level: u64, ell: u64) -> Result<(), HeckeError> {
    if level_val(level, ell) > 0 {
        return Err(HeckeError::NumericOnly { ell, level });
    }
    Ok(())
}

/// `T(1,1,l,l) F` on the requested indices, exactly.
///
/// Indices whose preimages are not all known are left out of the window.
pub fn apply_t1(
    source: &dyn CoefficientSource,
    ell: u64,
    outputs: &[Index],
) -> Result<FourierExpansion, HeckeError> {
    check_exact(source.level(), ell)?;
    let terms = t1_terms(ell, source.weight())?;
    Ok(slash_sum(source, &terms, outputs, source.level())?)
}

/// Lazily evaluated `T(1,1,l,l) F` with a coefficient cache.
pub struct T1Source<'a> {
    inner: &'a dyn CoefficientSource,
    terms: Vec<(Cyclotomic, UpperBlock)>,
    cache: RwLock<HashMap<Index, Option<Cyclotomic>>>,
}

impl<'a> T1Source<'a> {
    pub fn new(inner: &'a dyn CoefficientSource, ell: u64) -> Result<Self, HeckeError> {
        check_exact(inner.level(), ell)?;
        Ok(T1Source {
            inner,
            terms: t1_terms(ell, inner.weight())?,
            cache: RwLock::new(HashMap::new()),
        })
    }
}

impl CoefficientSource for T1Source<'_> {
    fn weight(&self) -> i64 {
        self.inner.weight()
    }

    fn level(&self) -> u64 {
        self.inner.level()
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        if let Some(v) = self.cache.read().expect("cache lock").get(idx) {
            return v.clone();
        }
        let mut acc = Cyclotomic::from_i64(0);
        let mut known = true;
        for (c, g) in &self.terms {
            match g.pull_back(self.inner, idx).ok().flatten() {
                Some(v) => acc = acc.try_add(&c.try_mul(&v).ok()?).ok()?,
                None => {
                    known = false;
                    break;
                }
            }
        }
        let v = known.then_some(acc);
        self.cache
            .write()
            .expect("cache lock")
            .insert(*idx, v.clone());
        v
    }
}

/// `c sum_g (F |_k g)(Z)` over the given elements.
fn numeric_sum(
    f: &FourierExpansion,
    elements: &[GSpMat],
    scale: f64,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, HeckeError> {
    let parts: Vec<Evaluation> = elements
        .par_iter()
        .map(|g| slash_numeric(f, g, z, f64::INFINITY))
        .collect::<Result<_, _>>()?;
    let value = parts.iter().map(|e| e.value).sum::<Complex64>() * scale;
    let tail = parts.iter().map(|e| e.tail).sum::<f64>() * scale.abs();
    if tail > precision * value.norm() && tail > 0.0 {
        return Err(FourierError::WindowInsufficient {
            tail,
            value: value.norm(),
        }
        .into());
    }
    Ok(Evaluation { value, tail })
}

/// `(T F)(Z)` for either operator, evaluated numerically.
///
/// The level must be prime to `l` or a power of `l`.
pub fn apply_hecke_numeric(
    f: &FourierExpansion,
    op: HeckeOp,
    ell: u64,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, HeckeError> {
    let r = level_val(f.level, ell) as u32;
    if r > 0 && f.level != crate::exact::upow(ell, r) {
        return Err(HeckeError::MixedLevel { ell, level: f.level });
    }
    let reps = global_reps(op, ell, r);
    let c = crate::exact::to_f64(&normalization(op, ell, f.weight));
    numeric_sum(f, &reps, c, z, precision)
}

/// `(T(1,l,l,l^2) F)(Z)`.
pub fn apply_t2_numeric(
    f: &FourierExpansion,
    ell: u64,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, HeckeError> {
    apply_hecke_numeric(f, HeckeOp::T2, ell, z, precision)
}

/// `(F |_k U_l)(Z)` for `F` of level `M`, with the lift chosen by `shift`.
pub fn apply_atkin_lehner_numeric(
    f: &FourierExpansion,
    ell: u64,
    shift: i64,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, HeckeError> {
    let u = atkin_lehner_with_lift(f.level, ell, shift);
    Ok(slash_numeric(f, &u, z, precision)?)
}
