//! Rational numbers, integer helpers and p-adic valuations.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Build the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Build the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p^e` as a rational, `e` may be negative.
pub fn ppow(p: u64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Parse `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Render as `"a"` or `"a/b"`.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn padic_val_int(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Exponent of `p` in a rational; `None` stands for the valuation of zero.
pub fn padic_val(x: &Rational, p: u64) -> Option<i64> {
    let vn = padic_val_int(x.numer(), p)?;
    let vd = padic_val_int(x.denom(), p).unwrap_or(0);
    Some(vn - vd)
}

/// True when `x` has no `p` in its denominator.
pub fn is_p_integral(x: &Rational, p: u64) -> bool {
    padic_val(x, p).is_none_or(|v| v >= 0)
}

/// True when `x` is a `p`-adic unit.
pub fn is_p_unit(x: &Rational, p: u64) -> bool {
    padic_val(x, p) == Some(0)
}

/// Convert an integral rational to `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Convert to a float.
pub fn to_f64(x: &Rational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            // Scale down huge numerators and denominators together.
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let n2: BigInt = n >> shift;
            let d2: BigInt = d >> shift;
            n2.to_f64().unwrap_or(f64::NAN) / d2.to_f64().unwrap_or(f64::NAN)
        }
    }
}

/// Reduce the `p`-integral rational `x` modulo `p^e`, returning a residue in `[0, p^e)`.
pub fn residue_mod_ppow(x: &Rational, p: u64, e: u32) -> Option<u64> {
    if !is_p_integral(x, p) {
        return None;
    }
    let m = BigInt::from(p).pow(e);
    let num = x.numer().mod_floor(&m);
    let den = x.denom().mod_floor(&m);
    let inv = mod_inverse_big(&den, &m)?;
    (num * inv).mod_floor(&m).to_u64()
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Integer power `p^e` as `u64`.
pub fn upow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// Exponent of `p` in a nonzero machine integer.
pub fn val_i128(mut n: i128, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let p = p as i128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Simple primality test for small inputs.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// The sign of a rational as `-1`, `0` or `1`.
pub fn sign(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&rat(18, 5), 3), Some(2));
        assert_eq!(padic_val(&rat(5, 27), 3), Some(-3));
        assert_eq!(padic_val(&int(0), 3), None);
        assert!(is_p_unit(&rat(2, 7), 3));
    }

    #[test]
    fn residues() {
        // 1/2 mod 27 = 14
        assert_eq!(residue_mod_ppow(&rat(1, 2), 3, 3), Some(14));
        assert_eq!(residue_mod_ppow(&rat(-1, 1), 3, 2), Some(8));
        assert_eq!(residue_mod_ppow(&rat(1, 3), 3, 2), None);
        assert_eq!(mod_inverse(2, 27), Some(14));
        assert_eq!(mod_inverse(3, 27), None);
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-7", "3/4", "-81/1024"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(totient(81), 54);
        assert!(is_prime(97) && !is_prime(91));
        assert_eq!(ppow(3, -2), rat(1, 9));
    }
}
