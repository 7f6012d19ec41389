//! Paramodular groups: membership predicates, probe generators and the
//! Atkin-Lehner element.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::exact::{
    a_mat, diag_j, int, l_mat, m2, padic_val, prime_factors, rat, u_mat, upow, GSpMat, Mat4,
    Rational, Realization,
};

/// Which paramodular group a membership question refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamodularSpec {
    /// `Gamma^para(N)` inside `Sp(4, Q)`.
    Global(u64),
    /// `K^para(ell^r)` inside `GSp(4, Q_ell)`.
    Local {
        ell: u64,
        r: u32,
        realization: Realization,
    },
}

impl ParamodularSpec {
    pub fn contains(&self, g: &GSpMat) -> bool {
        match *self {
            ParamodularSpec::Global(n) => in_paramodular_global(g, n),
            ParamodularSpec::Local {
                ell,
                r,
                realization,
            } => in_paramodular_local(g, ell, r, realization),
        }
    }
}

/// Exponent `e` such that the entry must lie in `N^e Z` (global) or
/// `ell^{e r} Z_ell` (local).
fn pattern(realization: Realization) -> [[i32; 4]; 4] {
    match realization {
        Realization::J => [[0, 0, -1, 0], [1, 0, 0, 0], [1, 1, 0, 1], [1, 0, 0, 0]],
        Realization::JPrime => [[0, 0, 0, -1], [1, 0, 0, 0], [1, 0, 0, 0], [1, 1, 1, 0]],
    }
}

/// Membership in `Gamma^para(N)`; `g` is read in realization `J`.
pub fn in_paramodular_global(g: &GSpMat, n: u64) -> bool {
    let g = g.convert(Realization::J);
    if !g.multiplier().is_one() {
        return false;
    }
    let pat = pattern(Realization::J);
    let level = int(n as i64);
    for (i, row) in pat.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            let x = g.entry(i, j);
            let scaled = match e {
                -1 => x * &level,
                1 => x / &level,
                _ => x.clone(),
            };
            if !scaled.is_integer() {
                return false;
            }
        }
    }
    true
}

/// Membership in `K^para(ell^r)` for the given realization.
pub fn in_paramodular_local(g: &GSpMat, ell: u64, r: u32, realization: Realization) -> bool {
    let g = g.convert(realization);
    if padic_val(g.multiplier(), ell) != Some(0) {
        return false;
    }
    let pat = pattern(realization);
    for (i, row) in pat.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if let Some(v) = padic_val(g.entry(i, j), ell) {
                if v < e as i64 * r as i64 {
                    return false;
                }
            }
        }
    }
    true
}

fn denominator_primes(g: &GSpMat) -> Vec<u64> {
    let mut out = Vec::new();
    for row in &g.mat().0 {
        for x in row {
            let d = u64::try_from(x.denom().clone()).unwrap_or(0);
            if d == 0 {
                continue;
            }
            out.extend(prime_factors(d));
        }
    }
    out
}

/// The local-global description of `Gamma^para(N)`: returns the pair
/// (global membership, adelic membership) so callers can compare.
pub fn global_local_pair(g: &GSpMat, n: u64) -> (bool, bool) {
    let g = g.convert(Realization::J);
    let global = in_paramodular_global(&g, n);
    let mut primes = prime_factors(n);
    primes.extend(denominator_primes(&g));
    primes.sort_unstable();
    primes.dedup();
    let local = g.multiplier().is_one()
        && primes.iter().all(|&ell| {
            let r = padic_val(&int(n as i64), ell).unwrap_or(0) as u32;
            in_paramodular_local(&g, ell, r, Realization::J)
        });
    (global, local)
}

/// Whether the global and adelic descriptions agree on `g`.
pub fn global_local_consistency(g: &GSpMat, n: u64) -> bool {
    let (a, b) = global_local_pair(g, n);
    a == b
}

/// `[[1,0,0,0],[0,0,0,1],[0,0,1,0],[0,-1,0,0]]`.
pub fn symmetry_swap() -> GSpMat {
    GSpMat::from_i64([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0]])
        .expect("symplectic")
}

/// The Fricke-type element `[[0,0,-1/N,0],[0,1,0,0],[N,0,0,0],[0,0,0,1]]`.
pub fn symmetry_fricke(n: u64) -> GSpMat {
    let mut m = Mat4::zero();
    m.0[0][2] = -rat(1, n as i64);
    m.0[1][1] = int(1);
    m.0[2][0] = int(n as i64);
    m.0[3][3] = int(1);
    GSpMat::new(m, Realization::J).expect("symplectic")
}

fn sym(a: Rational, b: Rational, c: Rational) -> [[Rational; 2]; 2] {
    m2::new(a, b.clone(), b, c)
}

/// A probe set of elements of `Gamma^para(N)`.
///
/// Not a proven generating set; the membership invariants only need a rich
/// supply of elements.
pub fn probe_generators(n: u64) -> Vec<GSpMat> {
    let ni = n as i64;
    let z = || int(0);
    let o = || int(1);
    let mut gens = vec![
        u_mat(&sym(rat(1, ni), z(), z())).unwrap(),
        u_mat(&sym(z(), o(), z())).unwrap(),
        u_mat(&sym(z(), z(), o())).unwrap(),
        l_mat(&sym(int(ni), z(), z())).unwrap(),
        l_mat(&sym(z(), int(ni), z())).unwrap(),
        l_mat(&sym(z(), z(), o())).unwrap(),
        a_mat(&m2::new(o(), o(), z(), o())).unwrap(),
        a_mat(&m2::new(o(), z(), int(ni), o())).unwrap(),
        a_mat(&m2::new(int(-1), z(), z(), o())).unwrap(),
        symmetry_swap(),
        symmetry_fricke(n),
    ];
    let f = symmetry_fricke(n);
    let f_inv = f.inverse();
    let lowered: Vec<GSpMat> = gens[..3]
        .iter()
        .map(|g| f.mul(g).and_then(|x| x.mul(&f_inv)).unwrap())
        .collect();
    gens.extend(lowered);
    gens
}

/// A random word of the given length in the probe generators and their inverses.
pub fn random_word(n: u64, length: usize, rng: &mut impl Rng) -> GSpMat {
    let gens = probe_generators(n);
    let mut g = GSpMat::identity(Realization::J);
    for _ in 0..length {
        let h = &gens[rng.random_range(0..gens.len())];
        let h = if rng.random_bool(0.5) { h.inverse() } else { h.clone() };
        g = g.mul(&h).expect("same realization");
    }
    g
}

/// `gamma_ell` for `U_ell`, built as `U(cS) L(-cS) U(cS)` with `S` the
/// antidiagonal unit and `c = 1 mod ell^v`, `c = 0 mod M / ell^v`.
///
/// `shift` moves `c` by multiples of `M`, giving other valid lifts.
pub fn atkin_lehner_gamma(m: u64, ell: u64, shift: i64) -> GSpMat {
    let v = padic_val(&int(m as i64), ell).unwrap_or(0) as u32;
    if m == 1 || v == 0 {
        return GSpMat::identity(Realization::J);
    }
    let a = upow(ell, v) as i64;
    let b = m as i64 / a;
    let inv = b.extended_gcd(&a).x.mod_floor(&a);
    let c = b * inv + shift * m as i64;
    let s = sym(int(0), int(c), int(0));
    let neg = sym(int(0), int(-c), int(0));
    let u = u_mat(&s).unwrap();
    u.mul(&l_mat(&neg).unwrap())
        .and_then(|x| x.mul(&u))
        .expect("same realization")
}

/// `U_ell = gamma_ell diag(ell^v, ell^v, 1, 1)` for level `M`.
pub fn atkin_lehner_matrix(m: u64, ell: u64) -> GSpMat {
    atkin_lehner_with_lift(m, ell, 0)
}

/// `U_ell` built from the lift selected by `shift`.
pub fn atkin_lehner_with_lift(m: u64, ell: u64, shift: i64) -> GSpMat {
    let v = padic_val(&int(m as i64), ell).unwrap_or(0) as u32;
    let e = int(upow(ell, v) as i64);
    let d = diag_j(e.clone(), e.clone(), e);
    atkin_lehner_gamma(m, ell, shift)
        .mul(&d)
        .expect("same realization")
}

/// Checks on a constructed `U_ell`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct AtkinLehnerReport {
    pub level: u64,
    pub ell: u64,
    pub v: u32,
    pub gamma_integral: bool,
    pub congruences: bool,
    pub normalizes: bool,
    pub involution: bool,
    pub lift_independent: bool,
}

impl AtkinLehnerReport {
    pub fn passed(&self) -> bool {
        self.gamma_integral
            && self.congruences
            && self.normalizes
            && self.involution
            && self.lift_independent
    }
}

fn congruent(g: &Mat4, target: &Mat4, modulus: u64) -> bool {
    let m = int(modulus as i64);
    (0..4).all(|i| {
        (0..4).all(|j| {
            let d = (&g.0[i][j] - &target.0[i][j]) / &m;
            d.is_integer()
        })
    })
}

/// Verify the defining congruences and the group-theoretic properties of `U_ell`.
pub fn check_atkin_lehner(m: u64, ell: u64) -> AtkinLehnerReport {
    let v = padic_val(&int(m as i64), ell).unwrap_or(0) as u32;
    let gamma = atkin_lehner_gamma(m, ell, 0);
    let u = atkin_lehner_matrix(m, ell);
    let jp = Realization::JPrime.form();
    let a = upow(ell, v);
    let congruences =
        congruent(gamma.mat(), &jp, a) && congruent(gamma.mat(), &Mat4::identity(), m / a);
    let u_inv = u.inverse();
    let normalizes = probe_generators(m).iter().all(|g| {
        let c = u.mul(g).and_then(|x| x.mul(&u_inv)).expect("same realization");
        in_paramodular_global(&c, m)
    });
    let sq = u.mul(&u).expect("same realization");
    let involution = in_paramodular_global(&sq.scale(&Rational::new(1.into(), a.into())), m);
    let other = atkin_lehner_with_lift(m, ell, 1);
    let lift_independent =
        in_paramodular_global(&other.mul(&u_inv).expect("same realization"), m);
    AtkinLehnerReport {
        level: m,
        ell,
        v,
        gamma_integral: gamma.mat().is_integral() && gamma.multiplier().is_one(),
        congruences,
        normalizes,
        involution,
        lift_independent,
    }
}

/// Elementary divisor exponents of an `ell`-integral matrix over `Z_ell`,
/// from valuations of minors.
pub fn elementary_divisors(g: &Mat4, ell: u64) -> Option<[i64; 4]> {
    let mut d = [0i64; 5];
    for k in 1..=4usize {
        let mut best: Option<i64> = None;
        for rows in subsets(k) {
            for cols in subsets(k) {
                let minor = det_sub(g, &rows, &cols);
                if minor.is_zero() {
                    continue;
                }
                let v = padic_val(&minor, ell)?;
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        d[k] = best?;
    }
    let mut out = [0i64; 4];
    for k in 0..4 {
        out[k] = d[k + 1] - d[k];
        if out[k] < 0 {
            return None;
        }
    }
    Some(out)
}

fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..16)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..4).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn det_sub(g: &Mat4, rows: &[usize], cols: &[usize]) -> Rational {
    let k = rows.len();
    if k == 1 {
        return g.0[rows[0]][cols[0]].clone();
    }
    let mut acc = Rational::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let x = &g.0[rows[0]][c];
        if x.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let sub = det_sub(g, &rows[1..], &rest);
        if idx % 2 == 0 {
            acc += x * sub;
        } else {
            acc -= x * sub;
        }
    }
    acc
}
