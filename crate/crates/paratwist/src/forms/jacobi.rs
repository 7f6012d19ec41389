//! Jacobi forms of index one, stored by discriminant `D = 4n - r^2`.
//!
//! `E_{4,1}` and `E_{6,1}` come from Cohen's function through generalized
//! Bernoulli numbers; `phi_{10,1}` is built as `eta^18 theta^2` and checked
//! against `(E_6 E_{4,1} - E_4 E_{6,1}) / 144`.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::elliptic::{eisenstein_coeffs, eta_product, sigma};
use super::FormsError;
use crate::exact::{int, Rational};

/// An index-one Jacobi form: `c(n, r)` depends only on `D = 4n - r^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiForm {
    pub weight: i64,
    /// `by_disc[D]` for `0 <= D <= max_disc`; negative discriminants vanish.
    pub by_disc: Vec<i128>,
}

impl JacobiForm {
    pub fn max_disc(&self) -> u64 {
        self.by_disc.len() as u64 - 1
    }

    /// `c(D)`, or `None` beyond the table.
    pub fn by_discriminant(&self, d: i128) -> Option<i128> {
        if d < 0 {
            return Some(0);
        }
        self.by_disc.get(usize::try_from(d).ok()?).copied()
    }

    /// `c(n, r)`.
    pub fn coefficient(&self, n: i64, r: i64) -> Option<i128> {
        self.by_discriminant(4 * n as i128 - (r as i128).pow(2))
    }
}

/// Bernoulli numbers `B_0 .. B_n` with `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * Rational::from_integer(binomial(m + 1, j).into());
        }
        b.push(-acc / Rational::from_integer((m as i64 + 1).into()));
    }
    b
}

fn binomial(n: usize, k: usize) -> i128 {
    let mut out: i128 = 1;
    for i in 0..k {
        out = out * (n - i) as i128 / (i as i128 + 1);
    }
    out
}

fn bernoulli_poly(r: usize, x: &Rational, b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, bj) in b.iter().enumerate().take(r + 1) {
        acc += bj * Rational::from_integer(binomial(r, j).into()) * num_traits::pow(x.clone(), r - j);
    }
    acc
}

/// The Kronecker symbol `(d / n)` for `n >= 1`.
pub fn kronecker(d: i64, mut n: u64) -> i64 {
    let mut out = 1;
    while n.is_multiple_of(2) {
        n /= 2;
        out *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => return 0,
        };
    }
    out * jacobi(d.rem_euclid(n as i64) as u64, n)
}

fn jacobi(mut a: u64, mut n: u64) -> i64 {
    let mut out = 1;
    a %= n;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                out = -out;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            out = -out;
        }
        a %= n;
    }
    if n == 1 {
        out
    } else {
        0
    }
}

/// Split a discriminant `D < 0` as `D0 f^2` with `D0` fundamental.
pub fn fundamental_part(d: i64) -> (i64, u64) {
    let mut core = d.abs();
    let mut f = 1u64;
    let mut q = 2i64;
    while q * q <= core {
        while core % (q * q) == 0 {
            core /= q * q;
            f *= q as u64;
        }
        q += 1;
    }
    let core = core * d.signum();
    if core.rem_euclid(4) == 1 {
        (core, f)
    } else {
        (4 * core, f / 2)
    }
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut out = 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            n /= q;
            if n.is_multiple_of(q) {
                return 0;
            }
            out = -out;
        }
        q += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// `L(1 - s, chi_{D0}) = -B_{s, chi} / s`.
fn l_value(s: usize, d0: i64, b: &[Rational]) -> Rational {
    let f = d0.unsigned_abs();
    let mut acc = Rational::zero();
    for a in 1..=f {
        let chi = kronecker(d0, a);
        if chi != 0 {
            acc += bernoulli_poly(s, &Rational::new(a.into(), f.into()), b) * int(chi);
        }
    }
    let bchi = acc * num_traits::pow(Rational::from_integer(f.into()), s - 1);
    -bchi / Rational::from_integer((s as i64).into())
}

/// Cohen's function `H(s, N)` for `N >= 0`.
pub fn cohen(s: usize, n: u64) -> Rational {
    let b = bernoulli_numbers(2 * s + 1);
    if n == 0 {
        return -&b[2 * s] / Rational::from_integer((2 * s as i64).into());
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Rational::zero();
    }
    let (d0, f) = fundamental_part(-(n as i64));
    let mut acc = Rational::zero();
    for d in (1..=f).filter(|d| f % d == 0) {
        let mu = mobius(d);
        if mu == 0 {
            continue;
        }
        let term = mu * kronecker(d0, d) * (d as i64).pow(s as u32 - 1);
        acc += Rational::from_integer((term as i128 * sigma(2 * s as u32 - 1, f / d)).into());
    }
    l_value(s, d0, &b) * acc
}

/// The Hurwitz class number by counting reduced forms of discriminant `-n`.
pub fn hurwitz_class_number(n: u64) -> Rational {
    if n == 0 {
        return Rational::new((-1).into(), 12.into());
    }
    if n % 4 == 1 || n % 4 == 2 {
        return Rational::zero();
    }
    let n = n as i64;
    let mut acc = Rational::zero();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            let weight = if b == a && c == a {
                Rational::new(1.into(), 3.into())
            } else if b == 0 && c == a {
                Rational::new(1.into(), 2.into())
            } else {
                Rational::one()
            };
            acc += weight;
        }
        a += 1;
    }
    acc
}

/// `E_{k,1}` for `k` in `{4, 6}` up to discriminant `max_disc`.
pub fn jacobi_eisenstein(k: i64, max_disc: u64) -> Result<JacobiForm, FormsError> {
    if k != 4 && k != 6 {
        return Err(FormsError::Unsupported(format!("Jacobi Eisenstein series of weight {k}")));
    }
    let s = (k - 1) as usize;
    let zeta = cohen(s, 0);
    let by_disc = (0..=max_disc)
        .map(|d| {
            let v = cohen(s, d) / &zeta;
            if !v.is_integer() {
                return Err(FormsError::NotIntegral(format!("E_{k},1 at D = {d}")));
            }
            v.to_integer().to_i128().ok_or(FormsError::Overflow)
        })
        .collect::<Result<_, _>>()?;
    Ok(JacobiForm { weight: k, by_disc })
}

/// `phi_{10,1} = eta^18 theta^2` up to discriminant `max_disc`.
pub fn phi10(max_disc: u64) -> JacobiForm {
    let n_max = (max_disc as usize + 1) / 4 + 1;
    let eta18 = eta_product(18, n_max + 1);
    let by_disc = (0..=max_disc as i64)
        .map(|d| {
            let r = match d.rem_euclid(4) {
                0 => 0,
                3 => 1,
                _ => return 0,
            };
            if d == 0 {
                return 0;
            }
            product_coefficient(&eta18, (d + r * r) / 4, r)
        })
        .collect();
    JacobiForm { weight: 10, by_disc }
}

/// `[q^n zeta^r] eta^18 theta^2` with `theta = sum (-1)^a q^{(2a+1)^2/8} zeta^{(2a+1)/2}`.
fn product_coefficient(eta18: &[i128], n: i64, r: i64) -> i128 {
    let sign = if (r - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut acc = 0i128;
    let target = 8 * n - 6;
    let bound = isqrt(target) / 2 + 2;
    for a in -bound..=bound {
        let b = r - 1 - a;
        let e8 = (2 * a + 1).pow(2) + (2 * b + 1).pow(2);
        if e8 <= target {
            let rest = target - e8;
            debug_assert_eq!(rest % 8, 0);
            acc += eta18[(rest / 8) as usize];
        }
    }
    sign * acc
}

fn isqrt(x: i64) -> i64 {
    crate::fourier::isqrt(x as i128) as i64
}

/// The table `c(n, r)` of `(E_6 E_{4,1} - E_4 E_{6,1}) / 144` for `n <= n_max`.
///
/// Rows are indexed by `n`, columns by `r + 2 sqrt(n) bound`.
pub fn phi10_oracle(n_max: usize) -> Result<Vec<Vec<(i64, i128)>>, FormsError> {
    let max_disc = 4 * n_max as u64;
    let e41 = jacobi_eisenstein(4, max_disc)?;
    let e61 = jacobi_eisenstein(6, max_disc)?;
    let e4 = eisenstein_coeffs(4, n_max);
    let e6 = eisenstein_coeffs(6, n_max);
    let mut rows = Vec::new();
    for n in 0..=n_max as i64 {
        let r_max = isqrt(4 * n);
        let mut row = Vec::new();
        for r in -r_max..=r_max {
            let mut acc = 0i128;
            for j in 0..=n {
                let d = 4 * (n - j) as i128 - (r as i128).pow(2);
                let a = e41.by_discriminant(d).expect("table covers n_max");
                let b = e61.by_discriminant(d).expect("table covers n_max");
                acc += e6[j as usize] * a - e4[j as usize] * b;
            }
            let (q, rem) = acc.div_rem(&144);
            if !rem.is_zero() {
                return Err(FormsError::NotIntegral(format!("oracle at ({n}, {r})")));
            }
            row.push((r, q));
        }
        rows.push(row);
    }
    Ok(rows)
}
