//! Truncated p-adic integers and matrices over `Q_p` stored as
//! `p^{-scale}` times an integer matrix reduced modulo a fixed power of `p`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::{is_p_integral, padic_val, residue_mod_ppow, upow, GSpMat, Mat4, Rational};

use super::CosetError;

/// The largest exponent `w` with `p^w < 2^63`.
pub fn working_precision(p: u64) -> u32 {
    let mut w = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p) {
        if next >= 1 << 63 {
            break;
        }
        acc = next;
        w += 1;
    }
    w
}

/// An element of `Z / p^w` for a fixed prime power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zp {
    v: u64,
    m: u64,
}

impl Zp {
    pub fn new(x: i128, m: u64) -> Self {
        Zp {
            v: x.rem_euclid(m as i128) as u64,
            m,
        }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.m
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    /// Multiplicative inverse; panics on non-units.
    pub fn inv(self) -> Self {
        let inv = crate::exact::mod_inverse(self.v as i128, self.m as i128)
            .expect("inverse of a non-unit");
        Zp {
            v: inv as u64,
            m: self.m,
        }
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Zp {
            v: 1 % self.m,
            m: self.m,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Add for Zp {
    type Output = Zp;
    fn add(self, o: Zp) -> Zp {
        Zp {
            v: ((self.v as u128 + o.v as u128) % self.m as u128) as u64,
            m: self.m,
        }
    }
}

impl Sub for Zp {
    type Output = Zp;
    fn sub(self, o: Zp) -> Zp {
        Zp {
            v: ((self.v as u128 + (self.m - o.v) as u128) % self.m as u128) as u64,
            m: self.m,
        }
    }
}

impl Mul for Zp {
    type Output = Zp;
    fn mul(self, o: Zp) -> Zp {
        Zp {
            v: ((self.v as u128 * o.v as u128) % self.m as u128) as u64,
            m: self.m,
        }
    }
}

impl Neg for Zp {
    type Output = Zp;
    fn neg(self) -> Zp {
        Zp {
            v: (self.m - self.v) % self.m,
            m: self.m,
        }
    }
}

/// Arithmetic context for one prime.
#[derive(Clone, Copy, Debug)]
pub struct PAdicCtx {
    pub p: u64,
    pub w: u32,
    pub modulus: u64,
}

impl PAdicCtx {
    pub fn new(p: u64) -> Self {
        let w = working_precision(p);
        PAdicCtx {
            p,
            w,
            modulus: upow(p, w),
        }
    }

    /// The integer `x` as a truncated p-adic number.
    pub fn z(&self, x: i128) -> Zp {
        Zp::new(x, self.modulus)
    }

    /// Valuation of a residue, capped at the working precision.
    pub fn val(&self, x: u64) -> u32 {
        if x == 0 {
            return self.w;
        }
        let mut v = 0;
        let mut y = x;
        while y.is_multiple_of(self.p) {
            y /= self.p;
            v += 1;
        }
        v
    }

    /// The entry `x * p^e`.
    pub fn pe(&self, x: Zp, e: i32) -> PEntry {
        PEntry { x, e }
    }

    /// The entry `x * p^e` for an integer `x`.
    pub fn pi(&self, x: i128, e: i32) -> PEntry {
        PEntry { x: self.z(x), e }
    }

    /// Assemble a matrix from entries `x p^e`; `lambda_val` is the valuation of the multiplier.
    pub fn mat(&self, entries: [[PEntry; 4]; 4], lambda_val: i32) -> ResidueMat {
        let d = entries
            .iter()
            .flatten()
            .filter(|t| !t.x.is_zero())
            .map(|t| -t.e)
            .max()
            .unwrap_or(0)
            .max(0);
        let mut out = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = entries[i][j];
                if t.x.is_zero() {
                    continue;
                }
                let shift = (t.e + d) as u32;
                out[i][j] = if shift >= self.w {
                    0
                } else {
                    (t.x * self.z(upow(self.p, shift) as i128)).value()
                };
            }
        }
        ResidueMat {
            p: self.p,
            modulus: self.modulus,
            scale: d,
            lambda_val,
            e: out,
        }
    }

    /// A diagonal matrix `diag(p^{e_i})`.
    pub fn diag(&self, exps: [i32; 4], lambda_val: i32) -> ResidueMat {
        let o = self.pi(0, 0);
        let mut m = [[o; 4]; 4];
        for i in 0..4 {
            m[i][i] = self.pi(1, exps[i]);
        }
        self.mat(m, lambda_val)
    }

    /// Convert an exact similitude (all entries must be `p`-adic).
    pub fn from_gsp(&self, g: &GSpMat) -> Result<ResidueMat, CosetError> {
        let lambda_val = padic_val(g.multiplier(), self.p).ok_or(CosetError::Precision)? as i32;
        self.from_mat4(g.mat(), lambda_val)
    }

    /// Convert a rational matrix with known multiplier valuation.
    pub fn from_mat4(&self, m: &Mat4, lambda_val: i32) -> Result<ResidueMat, CosetError> {
        let d =
            m.0.iter()
                .flatten()
                .filter_map(|x| padic_val(x, self.p))
                .map(|v| -v as i32)
                .max()
                .unwrap_or(0)
                .max(0);
        let scale = crate::exact::ppow(self.p, d as i64);
        let mut out = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let x: Rational = &m.0[i][j] * &scale;
                if x.is_zero() {
                    continue;
                }
                debug_assert!(is_p_integral(&x, self.p));
                out[i][j] = residue_mod_ppow(&x, self.p, self.w).ok_or(CosetError::Precision)?;
            }
        }
        Ok(ResidueMat {
            p: self.p,
            modulus: self.modulus,
            scale: d,
            lambda_val,
            e: out,
        })
    }
}

/// A matrix entry `x * p^e` before scaling.
#[derive(Clone, Copy, Debug)]
pub struct PEntry {
    pub x: Zp,
    pub e: i32,
}

/// The matrix `p^{-scale} * e` with `e` reduced modulo `p^w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueMat {
    pub(crate) p: u64,
    pub(crate) modulus: u64,
    pub(crate) scale: i32,
    pub(crate) lambda_val: i32,
    pub(crate) e: [[u64; 4]; 4],
}

impl ResidueMat {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn lambda_val(&self) -> i32 {
        self.lambda_val
    }

    pub fn entries(&self) -> &[[u64; 4]; 4] {
        &self.e
    }

    /// Matrix product, exact modulo the working precision.
    pub fn mul(&self, o: &ResidueMat) -> ResidueMat {
        let m = self.modulus as u128;
        let mut out = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s: u128 = 0;
                for k in 0..4 {
                    let a = self.e[i][k];
                    let b = o.e[k][j];
                    if a != 0 && b != 0 {
                        s = (s + (a as u128 * b as u128) % m) % m;
                    }
                }
                out[i][j] = s as u64;
            }
        }
        ResidueMat {
            p: self.p,
            modulus: self.modulus,
            scale: self.scale + o.scale,
            lambda_val: self.lambda_val + o.lambda_val,
            e: out,
        }
    }

    /// Product of several factors.
    pub fn product(factors: &[&ResidueMat]) -> ResidueMat {
        let mut acc = *factors[0];
        for f in &factors[1..] {
            acc = acc.mul(f);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_bounds() {
        assert_eq!(working_precision(2), 62);
        assert_eq!(working_precision(3), 39);
        assert_eq!(working_precision(5), 27);
        assert_eq!(working_precision(7), 22);
    }

    #[test]
    fn residue_arithmetic() {
        let c = PAdicCtx::new(3);
        let x = c.z(5);
        assert_eq!((x * x.inv()).value(), 1);
        assert_eq!((c.z(-1) + c.z(1)).value(), 0);
        assert_eq!(c.val(c.z(54).value()), 3);
        assert_eq!(c.z(2).pow(10).value(), 1024);
    }
}
