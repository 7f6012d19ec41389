//! The degree-one twist `sum_u chi(u) f|_k [[1, u/p], [0, 1]]` and `T(l)`.

use serde::Serialize;

use super::local::legendre;
use super::TwistError;
use crate::charsum::gauss_sum;
use crate::exact::{int, ppow, Cyclotomic, Rational};
use crate::fourier::{root_of_unity, EllipticExpansion};

/// `[[a, b], [0, d]]` with `a, d > 0`.
#[derive(Clone, Debug)]
pub struct Upper2 {
    pub a: i64,
    pub b: Rational,
    pub d: i64,
}

/// `sum_i c_i f|_k g_i` coefficientwise, with `f|_k g (z) = det^{k/2} d^{-k} f(g z)`.
///
/// The output is truncated where every preimage coefficient is known.
pub fn elliptic_slash_sum(
    f: &EllipticExpansion,
    terms: &[(Cyclotomic, Upper2)],
    out_level: u64,
) -> Result<EllipticExpansion, TwistError> {
    if f.weight % 2 != 0 {
        return Err(TwistError::Internal("odd weight needs a square root of the determinant".into()));
    }
    let big_d = f.truncation() as i64;
    let out_d = terms
        .iter()
        .map(|(_, g)| big_d * g.a / g.d)
        .min()
        .unwrap_or(big_d);
    let half_k = (f.weight / 2) as usize;
    let mut coeffs = Vec::with_capacity(out_d as usize + 1);
    for n_out in 0..=out_d {
        let mut acc = Cyclotomic::from_i64(0);
        for (c, g) in terms {
            if (n_out * g.d) % g.a != 0 {
                continue;
            }
            let n = n_out * g.d / g.a;
            let a_n = f.get(n as usize);
            if a_n.is_zero() {
                continue;
            }
            let det = int(g.a * g.d);
            let factor = num_traits::pow(det, half_k) / num_traits::pow(int(g.d), 2 * half_k);
            let phase = root_of_unity(&(int(n) * &g.b / int(g.d)))
                .map_err(|e| TwistError::Internal(e.to_string()))?;
            acc = acc.try_add(&c.try_mul(&phase.scale(&factor))?.try_mul(&a_n)?)?;
        }
        coeffs.push(acc);
    }
    Ok(EllipticExpansion {
        weight: f.weight,
        level: out_level,
        coefficients: coeffs,
    })
}

/// The twist as the sum of translates.
pub fn gl2_twist_slash(f: &EllipticExpansion, p: u64) -> Result<EllipticExpansion, TwistError> {
    check_prime(f, p)?;
    let terms: Vec<(Cyclotomic, Upper2)> = (1..p as i64)
        .map(|u| {
            (
                Cyclotomic::from_i64(legendre(p, u as u64)),
                Upper2 { a: 1, b: Rational::new(u.into(), (p as i64).into()), d: 1 },
            )
        })
        .collect();
    elliptic_slash_sum(f, &terms, f.level * p * p)
}

/// The twist as `W(chi) chi(n) a_n`.
pub fn gl2_twist_closed(f: &EllipticExpansion, p: u64) -> Result<EllipticExpansion, TwistError> {
    check_prime(f, p)?;
    let w = gauss_sum(p);
    let coefficients = f
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, a)| Ok(w.scale(&int(legendre(p, n as u64))).try_mul(a)?))
        .collect::<Result<_, TwistError>>()?;
    Ok(EllipticExpansion {
        weight: f.weight,
        level: f.level * p * p,
        coefficients,
    })
}

fn check_prime(f: &EllipticExpansion, p: u64) -> Result<(), TwistError> {
    if p.is_multiple_of(2) || !crate::exact::is_prime(p) {
        return Err(TwistError::BadPrime(p));
    }
    if f.level.is_multiple_of(p) {
        return Err(TwistError::LevelNotCoprime(p, f.level));
    }
    Ok(())
}

/// `T(l) f = l^{k/2 - 1} sum f|_k g` over `[[l, 0], [0, 1]]` and `[[1, b], [0, l]]`.
pub fn gl2_hecke(f: &EllipticExpansion, ell: u64) -> Result<EllipticExpansion, TwistError> {
    if f.level.is_multiple_of(ell) {
        return Err(TwistError::LevelNotCoprime(ell, f.level));
    }
    let l = ell as i64;
    let c = Cyclotomic::rational(ppow(ell, f.weight / 2 - 1));
    let mut terms = vec![(c.clone(), Upper2 { a: l, b: int(0), d: 1 })];
    for b in 0..l {
        terms.push((c.clone(), Upper2 { a: 1, b: int(b), d: l }));
    }
    elliptic_slash_sum(f, &terms, f.level)
}

/// Outcome of the degree-one checks.
#[derive(Clone, Debug, Serialize)]
pub struct Gl2Report {
    pub p: u64,
    pub truncation: usize,
    pub mismatches: Vec<usize>,
    pub passed: bool,
}

/// Compare the two descriptions of the twist coefficientwise.
pub fn verify_gl2_twist(f: &EllipticExpansion, p: u64) -> Result<Gl2Report, TwistError> {
    let a = gl2_twist_slash(f, p)?;
    let b = gl2_twist_closed(f, p)?;
    Ok(compare(p, &a, &b))
}

/// `T(l) T_chi f` against `chi(l) T_chi T(l) f`.
pub fn verify_gl2_commutation(f: &EllipticExpansion, p: u64, ell: u64) -> Result<Gl2Report, TwistError> {
    let lhs = gl2_hecke(&gl2_twist_slash(f, p)?, ell)?;
    let rhs = gl2_twist_slash(&gl2_hecke(f, ell)?, p)?
        .scale(&Cyclotomic::from_i64(legendre(p, ell)))
        .map_err(|e| TwistError::Internal(e.to_string()))?;
    Ok(compare(p, &lhs, &rhs))
}

fn compare(p: u64, a: &EllipticExpansion, b: &EllipticExpansion) -> Gl2Report {
    let d = a.truncation().min(b.truncation());
    let mismatches: Vec<usize> = (0..=d).filter(|&n| a.get(n) != b.get(n)).collect();
    Gl2Report {
        p,
        truncation: d,
        passed: mismatches.is_empty(),
        mismatches,
    }
}
