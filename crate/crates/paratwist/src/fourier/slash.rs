//! Exact coefficientwise slash action of block upper triangular elements.
//!
//! For `g = [[A, B], [0, D]]` with `A^T D = lambda`, the term `a(T) e(tr(TZ))`
//! becomes `lambda^k det(D)^{-k} e(tr(T B D^{-1})) a(T) e(tr(T' Z))` with
//! `T' = A^T T A / lambda`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::expansion::{CoefficientSource, FourierExpansion};
use super::index::{raw_from_mat, raw_on_level, Index, RawIndex, Window};
use super::FourierError;
use crate::exact::{a_mat, m2, prime_power, u_mat, Cyclotomic, GSpMat, Mat2, Rational};

/// `e(x) = exp(2 pi i x)` for rational `x` whose denominator is a prime power.
pub fn root_of_unity(x: &Rational) -> Result<Cyclotomic, FourierError> {
    let frac = x - x.floor();
    let den = frac.denom();
    let den = u64::try_from(den).map_err(|_| FourierError::UnsupportedRoot(den.to_string()))?;
    let num = i64::try_from(frac.numer()).expect("numerator below denominator");
    match den {
        1 => Ok(Cyclotomic::from_i64(1)),
        2 => Ok(Cyclotomic::from_i64(-1)),
        _ => {
            let (p, e) =
                prime_power(den).ok_or_else(|| FourierError::UnsupportedRoot(den.to_string()))?;
            Ok(Cyclotomic::zeta_power(p, e, num))
        }
    }
}

/// A block upper triangular similitude prepared for coefficientwise action.
#[derive(Clone, Debug)]
pub struct UpperBlock {
    a: Mat2,
    a_inv: Mat2,
    shift: Mat2,
    lambda: Rational,
    factor: Rational,
}

impl UpperBlock {
    /// Prepare `g` (any realization; read in `J`) for weight `k`.
    pub fn new(g: &GSpMat, k: i64) -> Result<Self, FourierError> {
        if !g.is_upper_block() {
            return Err(FourierError::NotUpperBlock);
        }
        let (a, b, _, d) = g.blocks();
        let lambda = g.multiplier().clone();
        if !lambda.is_positive() {
            return Err(FourierError::NegativeMultiplier);
        }
        let d_inv = m2::inverse(&d).expect("similitude blocks are invertible");
        let a_inv = m2::inverse(&a).expect("similitude blocks are invertible");
        let factor = pow(&(&lambda / m2::det(&d)), k);
        Ok(UpperBlock {
            shift: m2::mul(&b, &d_inv),
            a,
            a_inv,
            lambda,
            factor,
        })
    }

    /// `U(Q) A(P)`.
    pub fn monomial(q: &Mat2, p: &Mat2, k: i64) -> Result<Self, FourierError> {
        let g = u_mat(q)?.mul(&a_mat(p)?)?;
        Self::new(&g, k)
    }

    /// `T' = A^T T A / lambda`.
    pub fn image(&self, t: &Mat2) -> Mat2 {
        let x = m2::mul(&m2::mul(&m2::transpose(&self.a), t), &self.a);
        x.map(|row| row.map(|v| v / &self.lambda))
    }

    /// The unique `T` with image `T'`.
    pub fn preimage(&self, t: &Mat2) -> Mat2 {
        let x = m2::mul(&m2::mul(&m2::transpose(&self.a_inv), t), &self.a_inv);
        x.map(|row| row.map(|v| v * &self.lambda))
    }

    /// `tr(T B D^{-1})`.
    pub fn phase(&self, t: &Mat2) -> Rational {
        m2::trace(&m2::mul(t, &self.shift))
    }

    /// `lambda^k det(D)^{-k}`.
    pub fn factor(&self) -> &Rational {
        &self.factor
    }

    /// Contribution of `a(T)` placed at the image index.
    pub fn push_forward(
        &self,
        t: &Index,
        value: &Cyclotomic,
    ) -> Result<(RawIndex, Cyclotomic), FourierError> {
        let tm = t.to_mat();
        let w = root_of_unity(&self.phase(&tm))?.scale(&self.factor);
        Ok((raw_from_mat(&self.image(&tm)), w.try_mul(value)?))
    }

    /// Contribution to `b(T')` pulled back from the source; `None` if unknown.
    pub fn pull_back(
        &self,
        source: &dyn CoefficientSource,
        out: &Index,
    ) -> Result<Option<Cyclotomic>, FourierError> {
        let t = self.preimage(&out.to_mat());
        let Some(idx) = Index::from_mat(&t) else {
            return Ok(Some(Cyclotomic::from_i64(0)));
        };
        if !idx.is_semidefinite() || !idx.on_level(source.level()) {
            return Ok(Some(Cyclotomic::from_i64(0)));
        }
        let Some(a) = source.coefficient(&idx) else {
            return Ok(None);
        };
        if a.is_zero() {
            return Ok(Some(a));
        }
        let w = root_of_unity(&self.phase(&t))?.scale(&self.factor);
        Ok(Some(w.try_mul(&a)?))
    }
}

fn pow(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Result of a forward slash: lattice part plus contributions off the lattice.
#[derive(Clone, Debug)]
pub struct SlashOutput {
    pub expansion: FourierExpansion,
    pub pending: BTreeMap<RawIndex, Cyclotomic>,
}

impl SlashOutput {
    /// Whether every off-lattice contribution has cancelled.
    pub fn pending_cancels(&self) -> bool {
        self.pending.values().all(Zero::is_zero)
    }
}

/// `F |_k U(Q) A(P)` coefficientwise.
pub fn slash_monomial(
    f: &FourierExpansion,
    q: &Mat2,
    p: &Mat2,
    out_level: u64,
) -> Result<SlashOutput, FourierError> {
    if !m2::det(p).is_positive() {
        return Err(FourierError::NegativeMultiplier);
    }
    let g = UpperBlock::monomial(q, p, f.weight)?;
    slash_upper(f, &g, out_level)
}

/// `F |_k g` coefficientwise for block upper triangular `g`.
pub fn slash_upper(
    f: &FourierExpansion,
    g: &UpperBlock,
    out_level: u64,
) -> Result<SlashOutput, FourierError> {
    let mut window = std::collections::BTreeSet::new();
    for idx in f.window.indices(f.level) {
        let raw = raw_from_mat(&g.image(&idx.to_mat()));
        if raw_on_level(&raw, out_level) {
            window.insert(raw_index(&raw));
        }
    }
    let mut out = FourierExpansion::new(f.weight, out_level, Window::List(window));
    let mut pending: BTreeMap<RawIndex, Cyclotomic> = BTreeMap::new();
    for (idx, v) in &f.coefficients {
        let (raw, w) = g.push_forward(idx, v)?;
        if raw_on_level(&raw, out_level) {
            let i = raw_index(&raw);
            let acc = out.get(&i).try_add(&w)?;
            out.insert(i, acc)?;
        } else {
            let slot = pending
                .entry(raw)
                .or_insert_with(|| Cyclotomic::from_i64(0));
            *slot = slot.try_add(&w)?;
        }
    }
    Ok(SlashOutput {
        expansion: out,
        pending,
    })
}

fn raw_index(raw: &RawIndex) -> Index {
    let f = |x: &Rational| i64::try_from(x.to_integer()).expect("index fits in i64");
    Index::new(f(&raw[0]), f(&raw[1]), f(&raw[2]))
}

/// `sum_i c_i F |_k g_i` evaluated by pull-back on the requested indices.
///
/// An index is reported (and added to the window) only when every preimage
/// coefficient is known.
pub fn slash_sum(
    source: &dyn CoefficientSource,
    terms: &[(Cyclotomic, UpperBlock)],
    outputs: &[Index],
    out_level: u64,
) -> Result<FourierExpansion, FourierError> {
    let results: Vec<Result<Option<(Index, Cyclotomic)>, FourierError>> = outputs
        .par_iter()
        .map(|out| {
            let mut acc = Cyclotomic::from_i64(0);
            for (c, g) in terms {
                match g.pull_back(source, out)? {
                    Some(v) => acc = acc.try_add(&c.try_mul(&v)?)?,
                    None => return Ok(None),
                }
            }
            Ok(Some((*out, acc)))
        })
        .collect();
    let mut window = std::collections::BTreeSet::new();
    let mut coeffs = Vec::new();
    for r in results {
        if let Some((i, v)) = r? {
            window.insert(i);
            coeffs.push((i, v));
        }
    }
    let mut out = FourierExpansion::new(source.weight(), out_level, Window::List(window));
    for (i, v) in coeffs {
        out.insert(i, v)?;
    }
    Ok(out)
}

/// `U(Q1) A(P1) U(Q2) A(P2) = U(Q1 + P1 Q2 P1^T) A(P1 P2)`.
pub fn compose_monomials(q1: &Mat2, p1: &Mat2, q2: &Mat2, p2: &Mat2) -> (Mat2, Mat2) {
    let q = m2::add(q1, &m2::mul(&m2::mul(p1, q2), &m2::transpose(p1)));
    (q, m2::mul(p1, p2))
}
