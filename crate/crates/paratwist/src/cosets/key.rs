//! Canonical labels for cosets `g K` with `K = GSp(4, Z_p)` modulo the centre,
//! and formal weighted sums of such cosets.

use std::collections::HashMap;
use std::fmt;

use crate::exact::{mod_inverse, upow};

use super::residue::ResidueMat;
use super::CosetError;

/// Canonical label of the coset `Z g K`.
///
/// The lattice `g Z_p^4` (after normalizing `g` by a central power of `p`) has a
/// unique column Hermite basis: upper triangular, diagonal `p^{f_i}`, and the
/// entry above the diagonal in row `i` reduced modulo `p^{f_i}`. The key stores
/// the exponents and the reduced entries scaled by `p^{shift}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetKey {
    shift: i16,
    lambda_val: i8,
    diag: [i16; 4],
    upper: [u64; 6],
}

impl CosetKey {
    /// Diagonal exponents of the Hermite basis.
    pub fn diagonal(&self) -> [i64; 4] {
        self.diag.map(|d| d as i64 - self.shift as i64)
    }
}

impl fmt::Display for CosetKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "diag p^{:?}, upper {:?} / p^{}, lambda p^{}",
            self.diagonal(),
            self.upper,
            self.shift,
            self.lambda_val
        )
    }
}

fn reduce(x: u64, m: u64) -> u64 {
    x % m
}

/// Compute the canonical key of `g K` modulo the centre.
pub fn coset_key(g: &ResidueMat) -> Result<CosetKey, CosetError> {
    let p = g.p;
    // Central normalization: multiply by p^{-c} so that the multiplier has valuation 0 or 1.
    let c = g.lambda_val.div_euclid(2);
    let lambda_val = g.lambda_val - 2 * c;
    let mut scale = g.scale + c;

    // Strip the common power of p so that some entry is a unit.
    let val = |x: u64| -> u32 {
        if x == 0 {
            return u32::MAX;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(p) {
            y /= p;
            v += 1;
        }
        v
    };
    let wprec = {
        let mut w = 0u32;
        let mut m = g.modulus;
        while m > 1 {
            m /= p;
            w += 1;
        }
        w
    };
    let m0 =
        g.e.iter()
            .flatten()
            .map(|&x| val(x))
            .min()
            .unwrap_or(u32::MAX);
    if m0 == u32::MAX {
        return Err(CosetError::Precision);
    }
    scale -= m0 as i32;
    let avail = wprec - m0;
    let k = 2 * scale + lambda_val + 1;
    if k <= 0 || k as u32 > avail {
        return Err(CosetError::Precision);
    }
    let k = k as u32;
    let mk = upow(p, k);
    let div = upow(p, m0);
    let mut a = [[0u64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            a[i][j] = reduce(g.e[i][j] / div, mk);
        }
    }
    let mulm = |x: u64, y: u64| -> u64 { ((x as u128 * y as u128) % mk as u128) as u64 };
    let subm = |x: u64, y: u64| -> u64 { (x + mk - y) % mk };

    let mut diag = [0u32; 4];
    for i in (0..4).rev() {
        // Pivot of least valuation among columns 0..=i of row i.
        let (mut best, mut bv) = (usize::MAX, u32::MAX);
        for j in 0..=i {
            let v = val(a[i][j]);
            if v < bv {
                bv = v;
                best = j;
            }
        }
        if bv >= k {
            return Err(CosetError::Precision);
        }
        if best != i {
            for row in a.iter_mut() {
                row.swap(best, i);
            }
        }
        // Normalize the pivot to p^bv.
        let pb = upow(p, bv);
        let unit = a[i][i] / pb;
        let uinv = mod_inverse(unit as i128, upow(p, k - bv) as i128).expect("unit") as u64;
        for row in a.iter_mut() {
            row[i] = mulm(row[i], uinv);
        }
        // Clear the rest of row i.
        for j in 0..i {
            if a[i][j] == 0 {
                continue;
            }
            let t = a[i][j] / pb;
            for row in a.iter_mut() {
                let s = mulm(row[i], t);
                row[j] = subm(row[j], s);
            }
        }
        diag[i] = bv;
    }
    // Reduce the entries above the diagonal.
    for j in 1..4 {
        for i in (0..j).rev() {
            let pi = upow(p, diag[i]);
            let t = a[i][j] / pi;
            if t == 0 {
                continue;
            }
            for r in 0..=i {
                let s = mulm(a[r][i], t);
                a[r][j] = subm(a[r][j], s);
            }
        }
    }
    let upper = [a[0][1], a[0][2], a[0][3], a[1][2], a[1][3], a[2][3]];
    Ok(CosetKey {
        shift: scale as i16,
        lambda_val: lambda_val as i8,
        diag: diag.map(|d| d as i16),
        upper,
    })
}

/// Weights are rationals `num / p^den_exp` with a fixed denominator exponent.
#[derive(Clone, Debug)]
pub struct CosetSum {
    p: u64,
    den_exp: u32,
    den: i128,
    terms: HashMap<CosetKey, i128>,
}

impl CosetSum {
    /// An empty sum whose weights are multiples of `p^{-den_exp}`.
    pub fn new(p: u64, den_exp: u32) -> Self {
        let den = (p as i128)
            .checked_pow(den_exp)
            .expect("denominator overflow");
        CosetSum {
            p,
            den_exp,
            den,
            terms: HashMap::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    /// Add `sign * p^exp` to the coefficient of `key`.
    pub fn add_key(&mut self, key: CosetKey, sign: i64, exp: i32) {
        if sign == 0 {
            return;
        }
        let shift = exp + self.den_exp as i32;
        assert!(
            shift >= 0,
            "weight p^{exp} below the denominator of this sum"
        );
        let w = (self.p as i128)
            .checked_pow(shift as u32)
            .expect("weight overflow")
            * sign as i128;
        let e = self.terms.entry(key).or_insert(0);
        *e = e.checked_add(w).expect("weight overflow");
    }

    /// Add `num / p^den_exp` to the coefficient of `key`.
    pub fn add_raw(&mut self, key: CosetKey, num: i128) {
        let e = self.terms.entry(key).or_insert(0);
        *e = e.checked_add(num).expect("weight overflow");
    }

    /// Add `sign * p^exp * [g K]`.
    pub fn add(&mut self, g: &ResidueMat, sign: i64, exp: i32) -> Result<(), CosetError> {
        if sign == 0 {
            return Ok(());
        }
        let key = coset_key(g)?;
        self.add_key(key, sign, exp);
        Ok(())
    }

    /// Add `factor * other`.
    pub fn add_sum(&mut self, other: &CosetSum, factor: i64) {
        assert_eq!(self.p, other.p);
        let rescale = (self.p as i128).pow(self.den_exp.saturating_sub(other.den_exp));
        assert!(self.den_exp >= other.den_exp, "incompatible denominators");
        for (k, v) in &other.terms {
            self.add_raw(*k, v * rescale * factor as i128);
        }
    }

    /// Drop zero coefficients.
    pub fn prune(&mut self) {
        self.terms.retain(|_, v| *v != 0);
    }

    /// Number of cosets with nonzero coefficient.
    pub fn support_len(&self) -> usize {
        self.terms.values().filter(|v| **v != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|v| *v == 0)
    }

    /// Coefficient of a coset as `(numerator, p^den_exp)`.
    pub fn coefficient(&self, key: &CosetKey) -> (i128, i128) {
        (self.terms.get(key).copied().unwrap_or(0), self.den)
    }

    /// Sum of the coefficients.
    pub fn total(&self) -> (i128, i128) {
        (self.terms.values().sum(), self.den)
    }

    /// Cosets whose coefficients differ, with both coefficients.
    pub fn differences(&self, other: &CosetSum) -> Vec<(CosetKey, i128, i128)> {
        let mut out = Vec::new();
        let (a_scale, b_scale) = if self.den_exp >= other.den_exp {
            (1, (self.p as i128).pow(self.den_exp - other.den_exp))
        } else {
            ((self.p as i128).pow(other.den_exp - self.den_exp), 1)
        };
        for (k, v) in &self.terms {
            let w = other.terms.get(k).copied().unwrap_or(0);
            if v * a_scale != w * b_scale {
                out.push((*k, v * a_scale, w * b_scale));
            }
        }
        for (k, w) in &other.terms {
            if !self.terms.contains_key(k) && *w != 0 {
                out.push((*k, 0, w * b_scale));
            }
        }
        out.sort();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CosetKey, &i128)> {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::super::residue::PAdicCtx;
    use super::*;
    use crate::exact::{a_mat, int, m2, rat, u_mat, GSpMat};

    fn key(ctx: &PAdicCtx, g: &GSpMat) -> CosetKey {
        coset_key(&ctx.from_gsp(g).unwrap()).unwrap()
    }

    #[test]
    fn right_multiplication_by_k_is_invisible() {
        let ctx = PAdicCtx::new(3);
        let g = u_mat(&m2::new(rat(1, 27), rat(2, 9), rat(2, 9), rat(5, 3)))
            .unwrap()
            .mul(&a_mat(&m2::new(int(3), rat(1, 9), int(0), int(1))).unwrap())
            .unwrap();
        let k = u_mat(&m2::new(int(4), int(-1), int(-1), int(7)))
            .unwrap()
            .mul(&a_mat(&m2::new(int(2), int(1), int(1), int(1))).unwrap())
            .unwrap();
        assert_eq!(key(&ctx, &g), key(&ctx, &g.mul(&k).unwrap()));
        // a different coset
        let h = g
            .mul(&u_mat(&m2::new(rat(1, 3), int(0), int(0), int(0))).unwrap())
            .unwrap();
        assert_ne!(key(&ctx, &g), key(&ctx, &h));
        // central scalars are invisible
        assert_eq!(key(&ctx, &g), key(&ctx, &g.scale(&int(9))));
    }
}
