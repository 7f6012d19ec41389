//! Elements of the cyclotomic fields `Q(zeta_{p^e})` in the power basis.
//!
//! An element of order `p^0 = 1` is an ordinary rational number, so the same
//! type serves as the exact scalar for coefficients that may or may not carry
//! roots of unity.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, to_f64, upow, Rational};
use super::ExactError;

/// An element of `Q(zeta_{p^e})` written in the basis `1, zeta, ..., zeta^{phi-1}`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    p: u64,
    e: u32,
    coeffs: Vec<Rational>,
}

/// Exact coefficient values: rationals or cyclotomic numbers.
pub type ExactScalar = Cyclotomic;

fn phi(p: u64, e: u32) -> usize {
    if e == 0 {
        1
    } else {
        ((p - 1) * upow(p, e - 1)) as usize
    }
}

impl Cyclotomic {
    /// Zero in `Q(zeta_{p^e})`.
    pub fn zero_in(p: u64, e: u32) -> Self {
        let p = if e == 0 { 1 } else { p };
        Cyclotomic {
            p,
            e,
            coeffs: vec![Rational::zero(); phi(p, e)],
        }
    }

    /// The rational number `x`.
    pub fn rational(x: Rational) -> Self {
        Cyclotomic {
            p: 1,
            e: 0,
            coeffs: vec![x],
        }
    }

    /// The integer `n`.
    pub fn from_i64(n: i64) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    /// `zeta_{p^e}^t`.
    pub fn zeta_power(p: u64, e: u32, t: i64) -> Self {
        let n = upow(p, e) as i64;
        let mut sums = vec![Rational::zero(); n as usize];
        sums[t.rem_euclid(n) as usize] = Rational::one();
        Self::from_exponent_sums(p, e, &sums)
    }

    /// Build `sum_t sums[t] zeta^t` for `t` in `0..p^e`.
    pub fn from_exponent_sums(p: u64, e: u32, sums: &[Rational]) -> Self {
        let n = upow(p, e) as usize;
        assert_eq!(sums.len(), n, "expected one entry per residue mod p^e");
        if e == 0 {
            return Self::rational(sums[0].clone());
        }
        let f = phi(p, e);
        let step = upow(p, e - 1) as usize;
        let mut coeffs = vec![Rational::zero(); f];
        for (t, s) in sums.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if t < f {
                coeffs[t] += s;
            } else {
                let r = t - f;
                for j in 0..(p as usize - 1) {
                    coeffs[r + j * step] -= s;
                }
            }
        }
        Cyclotomic { p, e, coeffs }
    }

    /// Same as [`Cyclotomic::from_exponent_sums`] for integer bucket counts.
    pub fn from_exponent_counts(p: u64, e: u32, counts: &[i64]) -> Self {
        let sums: Vec<Rational> = counts
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        Self::from_exponent_sums(p, e, &sums)
    }

    /// The prime `p` (1 for rationals).
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The exponent `e` of the ambient field `Q(zeta_{p^e})`.
    pub fn exponent(&self) -> u32 {
        self.e
    }

    /// The order `p^e` of the ambient root of unity.
    pub fn order(&self) -> u64 {
        upow(self.p, self.e)
    }

    /// Power-basis coefficients.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Construct from explicit power-basis coefficients.
    pub fn from_coeffs(p: u64, e: u32, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        if coeffs.len() != phi(p, e) {
            return Err(ExactError::Cyclotomic(format!(
                "expected {} coefficients for order {}^{}, got {}",
                phi(p, e),
                p,
                e,
                coeffs.len()
            )));
        }
        Ok(Cyclotomic {
            p: if e == 0 { 1 } else { p },
            e,
            coeffs,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    /// Rewrite in the larger field `Q(zeta_{p^e2})`.
    pub fn embed(&self, p: u64, e2: u32) -> Result<Self, ExactError> {
        if self.e == 0 {
            let mut out = Self::zero_in(p, e2);
            out.coeffs[0] = self.coeffs[0].clone();
            return Ok(out);
        }
        if p != self.p || e2 < self.e {
            return Err(ExactError::Cyclotomic(format!(
                "cannot embed order {} into order {}^{}",
                self.order(),
                p,
                e2
            )));
        }
        let stride = upow(p, e2 - self.e) as usize;
        let mut out = Self::zero_in(p, e2);
        for (t, c) in self.coeffs.iter().enumerate() {
            out.coeffs[t * stride] = c.clone();
        }
        Ok(out)
    }

    fn common(&self, other: &Self) -> Result<(Self, Self), ExactError> {
        let p = if self.e == 0 { other.p } else { self.p };
        if self.e > 0 && other.e > 0 && self.p != other.p {
            return Err(ExactError::Cyclotomic(format!(
                "mixed roots of unity of orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        let e = self.e.max(other.e);
        Ok((self.embed(p, e)?, other.embed(p, e)?))
    }

    /// Checked sum.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let (mut a, b) = self.common(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    /// Checked product.
    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if let Some(r) = self.to_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.to_rational() {
            return Ok(self.scale(&r));
        }
        let (a, b) = self.common(other)?;
        let n = a.order() as usize;
        let mut sums = vec![Rational::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    sums[(i + j) % n] += x * y;
                }
            }
        }
        Ok(Self::from_exponent_sums(a.p, a.e, &sums))
    }

    /// Multiply by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            p: self.p,
            e: self.e,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Apply the automorphism `zeta -> zeta^a` for `a` prime to `p`.
    pub fn galois(&self, a: i64) -> Self {
        if self.e == 0 {
            return self.clone();
        }
        let n = self.order() as i64;
        let mut sums = vec![Rational::zero(); n as usize];
        for (t, c) in self.coeffs.iter().enumerate() {
            sums[(t as i64 * a).rem_euclid(n) as usize] += c;
        }
        Self::from_exponent_sums(self.p, self.e, &sums)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Numerical value with `zeta = exp(2 pi i / p^e)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| Complex64::from_polar(to_f64(c), std::f64::consts::TAU * t as f64 / n))
            .sum()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => self.is_zero() && other.is_zero(),
        }
    }
}

impl Eq for Cyclotomic {}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::from_i64(1)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("incompatible cyclotomic fields")
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("incompatible cyclotomic fields")
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.p == rhs.p && self.e == rhs.e {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic {
            p: self.p,
            e: self.e,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.clone().neg()
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("incompatible cyclotomic fields")
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("incompatible cyclotomic fields")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match t {
                0 => write!(f, "{}", format_rational(c))?,
                _ => write!(f, "({})*z{}^{}", format_rational(c), self.order(), t)?,
            }
        }
        Ok(())
    }
}

/// Serialized form: a rational string, or the order and power-basis coefficients.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Rational(String),
    Cyclotomic { order: u64, coeffs: Vec<String> },
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self.to_rational() {
            Some(r) => ScalarRepr::Rational(format_rational(&r)),
            None => ScalarRepr::Cyclotomic {
                order: self.order(),
                coeffs: self.coeffs.iter().map(format_rational).collect(),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Rational(s) => parse_rational(&s)
                .map(Cyclotomic::rational)
                .map_err(D::Error::custom),
            ScalarRepr::Cyclotomic { order, coeffs } => {
                let (p, e) = prime_power(order).ok_or_else(|| {
                    D::Error::custom(format!("order {order} is not a prime power"))
                })?;
                let coeffs = coeffs
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(D::Error::custom)?;
                Cyclotomic::from_coeffs(p, e, coeffs).map_err(D::Error::custom)
            }
        }
    }
}

/// Split `n = p^e` with `p` prime; `n = 1` gives `(1, 0)`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n == 1 {
        return Some((1, 0));
    }
    let factors = super::rational::prime_factors(n);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    Some((p, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn zeta_order_relation() {
        // zeta^81 = 1 and the sum of all 81st roots of unity vanishes
        let z = Cyclotomic::zeta_power(3, 4, 1);
        let mut acc = Cyclotomic::from_i64(1);
        let mut sum = Cyclotomic::zero_in(3, 4);
        for _ in 0..81 {
            sum += &acc;
            acc = &acc * &z;
        }
        assert_eq!(acc, Cyclotomic::from_i64(1));
        assert!(sum.is_zero());
    }

    #[test]
    fn embedding_and_conjugation() {
        let z3 = Cyclotomic::zeta_power(3, 1, 1);
        let z81 = Cyclotomic::zeta_power(3, 4, 27);
        assert_eq!(z3, z81);
        let prod = &z3 * &z3.conj();
        assert_eq!(prod, Cyclotomic::from_i64(1));
        // zeta_3 + zeta_3^2 = -1
        let s = &z3 + &Cyclotomic::zeta_power(3, 1, 2);
        assert_eq!(s.to_rational(), Some(rat(-1, 1)));
    }

    #[test]
    fn complex_value() {
        let z = Cyclotomic::zeta_power(5, 2, 3);
        let c = z.to_complex();
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU * 3.0 / 25.0);
        assert!((c - expect).norm() < 1e-12);
    }

    #[test]
    fn serde_roundtrip() {
        let x = &Cyclotomic::zeta_power(3, 2, 4).scale(&rat(2, 3)) + &Cyclotomic::from_i64(5);
        let s = serde_json::to_string(&x).unwrap();
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let r: Cyclotomic = serde_json::from_str("\"-3/7\"").unwrap();
        assert_eq!(r.to_rational(), Some(rat(-3, 7)));
    }
}
