//! Degree-one `q`-expansions: `Delta`, `E_4`, `E_6` and eta powers.

use crate::fourier::EllipticExpansion;

/// Coefficients of `prod_{n >= 1} (1 - q^n)^power` up to `q^len - 1`.
///
/// Multiples of three use the sparse cube `sum (-1)^j (2j + 1) q^{j(j+1)/2}`,
/// the rest the pentagonal series.
pub fn eta_product(power: u32, len: usize) -> Vec<i128> {
    let (base, times) = if power.is_multiple_of(3) {
        (eta_cubed(len), power / 3)
    } else {
        (pentagonal(len), power)
    };
    let mut out = vec![0i128; len];
    if len == 0 {
        return out;
    }
    out[0] = 1;
    for _ in 0..times {
        out = sparse_mul(&out, &base);
    }
    out
}

fn sparse_mul(dense: &[i128], sparse: &[(usize, i128)]) -> Vec<i128> {
    let len = dense.len();
    let mut out = vec![0i128; len];
    for &(e, c) in sparse {
        for (i, &d) in dense[..len - e].iter().enumerate() {
            if d != 0 {
                out[i + e] += c * d;
            }
        }
    }
    out
}

fn eta_cubed(len: usize) -> Vec<(usize, i128)> {
    let mut out = Vec::new();
    let mut j = 0usize;
    while j * (j + 1) / 2 < len {
        let sign = if j.is_multiple_of(2) { 1 } else { -1 };
        out.push((j * (j + 1) / 2, sign * (2 * j as i128 + 1)));
        j += 1;
    }
    out
}

fn pentagonal(len: usize) -> Vec<(usize, i128)> {
    let mut out = vec![(0usize, 1i128)];
    for j in 1.. {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let a = j * (3 * j - 1) / 2;
        let b = j * (3 * j + 1) / 2;
        if a >= len {
            break;
        }
        out.push((a, sign));
        if b < len {
            out.push((b, sign));
        }
    }
    out
}

/// `Delta = q prod (1 - q^n)^24` up to `q^d`.
pub fn delta_qexp(d: usize) -> EllipticExpansion {
    let eta24 = eta_product(24, d);
    let mut coeffs = vec![0i128; d + 1];
    coeffs[1..].copy_from_slice(&eta24);
    EllipticExpansion::from_integers(12, 1, &coeffs)
}

/// `sigma_j(n)`.
pub fn sigma(j: u32, n: u64) -> i128 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as i128).pow(j))
        .sum()
}

/// Coefficients of `E_4 = 1 + 240 sum sigma_3(n) q^n` or `E_6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein_coeffs(k: u32, d: usize) -> Vec<i128> {
    let c: i128 = match k {
        4 => 240,
        6 => -504,
        _ => panic!("only weights 4 and 6 are supported"),
    };
    let mut out = vec![0i128; d + 1];
    out[0] = 1;
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = c * sigma(k - 1, n as u64);
    }
    out
}

pub fn eisenstein_qexp(k: u32, d: usize) -> EllipticExpansion {
    EllipticExpansion::from_integers(k as i64, 1, &eisenstein_coeffs(k, d))
}
