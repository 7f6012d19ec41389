//! Floating point evaluation of truncated expansions with a heuristic tail.

use num_complex::Complex64;

use super::expansion::FourierExpansion;
use super::index::isqrt;
use super::index::Index;
use super::FourierError;
use crate::exact::{to_f64, GSpMat};

/// A complex symmetric 2x2 matrix.
pub type C2 = [[Complex64; 2]; 2];

/// A value together with an estimate of the truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail: f64,
}

/// `Z = X + iY` from real and imaginary parts given as `[z11, z12, z22]`.
pub fn point(re: [f64; 3], im: [f64; 3]) -> C2 {
    let c = |k: usize| Complex64::new(re[k], im[k]);
    [[c(0), c(1)], [c(1), c(2)]]
}

fn imag(z: &C2) -> [f64; 3] {
    [z[0][0].im, z[0][1].im, z[1][1].im]
}

fn min_eigen(y: [f64; 3]) -> f64 {
    let (a, b, c) = (y[0], y[1], y[2]);
    let mean = (a + c) / 2.0;
    mean - (((a - c) / 2.0).powi(2) + b * b).sqrt()
}

/// `sum a(T) e(tr(TZ))` over the stored coefficients, plus a tail estimate.
///
/// The tail assumes `|a(T)| <= C det(2T)^{k/2}` with `C` the largest ratio
/// among stored coefficients, summed over every definite level-`N` index
/// outside the window. Fails when the tail exceeds `precision * |value|`.
pub fn evaluate(
    f: &FourierExpansion,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, FourierError> {
    let reduced;
    let z = if f.level == 1 && f.weight % 2 == 0 {
        reduced = reduce_level_one(z);
        &reduced
    } else {
        z
    };
    let y = imag(z);
    let lam = min_eigen(y);
    if lam <= 0.0 {
        return Err(FourierError::NotInHalfSpace);
    }
    let i2pi = Complex64::new(0.0, std::f64::consts::TAU);
    let value: Complex64 = f
        .coefficients
        .iter()
        .map(|(t, a)| {
            let tr = z[0][0] * t.n as f64 + z[0][1] * t.r as f64 + z[1][1] * t.m as f64;
            a.to_complex() * (i2pi * tr).exp()
        })
        .sum();
    let tail = tail_bound(f, y, lam);
    if tail > precision * value.norm() && tail > 0.0 {
        return Err(FourierError::WindowInsufficient { tail, value: value.norm() });
    }
    Ok(Evaluation { value, tail })
}

/// `U Z U^T` with `U` in `GL(2, Z)` making `Im Z` reduced (`2|y12| <= y11 <= y22`).
///
/// Level one forms of even weight are invariant under this change.
pub fn reduce_level_one(z: &C2) -> C2 {
    let mut w = *z;
    for _ in 0..200 {
        let (y11, y12, y22) = (w[0][0].im, w[0][1].im, w[1][1].im);
        if y11 <= 0.0 {
            break;
        }
        if y12.abs() > y11 / 2.0 {
            let b = (y12 / y11).round();
            let a = w[0][0];
            let c = w[0][1];
            w[1][1] = w[1][1] - c * (2.0 * b) + a * (b * b);
            w[0][1] = c - a * b;
            w[1][0] = w[0][1];
        } else if y11 > y22 {
            let a = w[0][0];
            w[0][0] = w[1][1];
            w[1][1] = a;
        } else {
            break;
        }
    }
    w
}

fn tail_bound(f: &FourierExpansion, y: [f64; 3], lam: f64) -> f64 {
    let c = f.growth_constant();
    if c == 0.0 {
        return 0.0;
    }
    let k = f.weight as f64;
    let level = f.level as i64;
    let two_pi = std::f64::consts::TAU;
    let bound = |n: i64, m: i64| -> f64 {
        let nm = (n * m) as f64;
        let base = (lam * (n + m) as f64).max(n as f64 * y[0] + m as f64 * y[2] - 2.0 * nm.sqrt() * y[1].abs());
        c * (4.0 * nm).powf(k / 2.0) * (4.0 * nm.sqrt() + 1.0) * (-two_pi * base).exp()
    };
    let peak = (k + 2.0) / (two_pi * lam);
    let negligible = 1e-300_f64.max(c * 1e-60);
    let mut total = 0.0;
    let mut n = level;
    loop {
        let mut m = 1;
        let mut row = 0.0;
        loop {
            let b = bound(n, m);
            if b < negligible && (m as f64) > peak {
                break;
            }
            let idx_all_inside = {
                let r_max = isqrt(4 * n as i128 * m as i128) as i64;
                (-r_max..=r_max).all(|r| f.window.contains(&Index::new(n, r, m)))
            };
            if !idx_all_inside {
                let r_max = isqrt(4 * n as i128 * m as i128 - 1) as i64;
                for r in -r_max..=r_max {
                    let t = Index::new(n, r, m);
                    if f.window.contains(&t) || !t.is_definite() {
                        continue;
                    }
                    let tr = n as f64 * y[0] + r as f64 * y[1] + m as f64 * y[2];
                    row += c * (t.disc() as f64).powf(k / 2.0) * (-two_pi * tr).exp();
                }
            }
            m += 1;
        }
        total += row;
        if bound(n, 1) < negligible && (n as f64) > peak {
            break;
        }
        n += level;
    }
    total
}

/// `g<Z> = (AZ + B)(CZ + D)^{-1}` and `det(CZ + D)`.
pub fn act(g: &GSpMat, z: &C2) -> (C2, Complex64) {
    let (a, b, c, d) = g.blocks();
    let cf = |m: &crate::exact::Mat2| -> C2 {
        std::array::from_fn(|i| std::array::from_fn(|j| Complex64::new(to_f64(&m[i][j]), 0.0)))
    };
    let (a, b, c, d) = (cf(&a), cf(&b), cf(&c), cf(&d));
    let num = add(&mul(&a, z), &b);
    let den = add(&mul(&c, z), &d);
    let det = den[0][0] * den[1][1] - den[0][1] * den[1][0];
    let inv = [[den[1][1] / det, -den[0][1] / det], [-den[1][0] / det, den[0][0] / det]];
    let mut w = mul(&num, &inv);
    let sym = (w[0][1] + w[1][0]) / 2.0;
    w[0][1] = sym;
    w[1][0] = sym;
    (w, det)
}

fn mul(x: &C2, y: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
}

fn add(x: &C2, y: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j] + y[i][j]))
}

/// `(F |_k g)(Z) = lambda^k det(CZ + D)^{-k} F(g<Z>)`.
pub fn slash_numeric(
    f: &FourierExpansion,
    g: &GSpMat,
    z: &C2,
    precision: f64,
) -> Result<Evaluation, FourierError> {
    let lambda = to_f64(g.multiplier());
    if lambda <= 0.0 {
        return Err(FourierError::NegativeMultiplier);
    }
    let (w, j) = act(g, z);
    let inner = evaluate(f, &w, precision)?;
    let k = f.weight as i32;
    let factor = Complex64::new(lambda.powi(k), 0.0) / j.powi(k);
    Ok(Evaluation {
        value: factor * inner.value,
        tail: factor.norm() * inner.tail,
    })
}

/// Relative deviation `|a - b| / max(|a|, |b|)`.
pub fn relative_deviation(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}
