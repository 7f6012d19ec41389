//! Coset representatives for `T(1,1,l,l)` and `T(1,l,l,l^2)` at paramodular level `l^r`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{a_mat, diag_j, int, l_mat, m2, ppow, upow, GSpMat, Mat2, Mat4, Rational, Realization};
use crate::groups::{elementary_divisors, in_paramodular_global, in_paramodular_local};

/// The two Hecke operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeckeOp {
    /// `T(1,1,l,l)`, local double coset of `diag(l,l,1,1)`.
    T1,
    /// `T(1,l,l,l^2)`, local double coset of `diag(l^2,l,1,l)`.
    T2,
}

impl HeckeOp {
    /// Multiplier of the local representatives.
    pub fn multiplier(self, ell: u64) -> u64 {
        match self {
            HeckeOp::T1 => ell,
            HeckeOp::T2 => ell * ell,
        }
    }

    /// Number of left cosets.
    pub fn expected_count(self, ell: u64, r: u32) -> usize {
        let l = ell as usize;
        match (self, r) {
            (HeckeOp::T1, 0) => l * l * l + l * l + l + 1,
            (HeckeOp::T1, _) => l * l * l + 2 * l * l + l,
            (HeckeOp::T2, 0) => l * l * l * l + l * l * l + l * l + l,
            (HeckeOp::T2, _) => l * l * l * l + l * l * l,
        }
    }

    /// Elementary divisor exponents of the double coset at `r = 0`.
    pub fn divisors(self) -> [i64; 4] {
        match self {
            HeckeOp::T1 => [0, 0, 1, 1],
            HeckeOp::T2 => [0, 1, 1, 2],
        }
    }
}

impl std::str::FromStr for HeckeOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T1" | "t1" => Ok(HeckeOp::T1),
            "T2" | "t2" => Ok(HeckeOp::T2),
            _ => Err(format!("unknown operator {s:?}; expected T1 or T2")),
        }
    }
}

/// Left coset representatives `g_i K^para(l^r)` of one double coset.
#[derive(Clone, Debug)]
pub struct CosetFamily {
    pub op: HeckeOp,
    pub ell: u64,
    pub r: u32,
    pub reps: Vec<GSpMat>,
}

fn r64(x: i64) -> Rational {
    int(x)
}

fn sym(a: Rational, b: Rational, c: Rational) -> Mat2 {
    m2::new(a, b.clone(), b, c)
}

/// `[[1,0,Q],[0,1]]`.
fn u(q: Mat2) -> GSpMat {
    crate::exact::u_mat(&q).expect("symmetric")
}

/// `[[1,x,0,0],[0,1,0,0],[0,0,1,0],[0,0,-x,1]]`.
fn ax(x: i64) -> GSpMat {
    a_mat(&m2::new(r64(1), r64(x), r64(0), r64(1))).expect("invertible")
}

fn d(a1: u64, a2: u64, lambda: u64) -> GSpMat {
    diag_j(r64(a1 as i64), r64(a2 as i64), r64(lambda as i64))
}

/// `[[0,0,-l^{-r},0],[0,1,0,0],[l^r,0,0,0],[0,0,0,1]]`.
fn w(ell: u64, r: u32) -> GSpMat {
    let mut m = Mat4::zero();
    m.0[0][2] = -ppow(ell, -(r as i64));
    m.0[1][1] = r64(1);
    m.0[2][0] = ppow(ell, r as i64);
    m.0[3][3] = r64(1);
    GSpMat::new(m, Realization::J).expect("symplectic")
}

fn prod(parts: &[&GSpMat]) -> GSpMat {
    GSpMat::product(parts.iter().copied()).expect("same realization")
}

fn units(ell: u64) -> impl Iterator<Item = i64> {
    1..ell as i64
}

/// The displayed representative families, each product multiplied out.
pub fn coset_reps(op: HeckeOp, ell: u64, r: u32) -> CosetFamily {
    let l = ell as i64;
    let ll = l * l;
    let mut reps = Vec::new();
    let z0 = || r64(0);
    match (op, r) {
        (HeckeOp::T1, 0) => {
            let dg = d(ell, ell, ell);
            for x in 0..l {
                for y in 0..l {
                    for z in 0..l {
                        reps.push(prod(&[&u(sym(r64(z), r64(y), r64(x))), &dg]));
                    }
                }
            }
            let dg = d(ell, 1, ell);
            for x in 0..l {
                for z in 0..l {
                    reps.push(prod(&[&ax(x), &u(sym(r64(z), z0(), z0())), &dg]));
                }
            }
            let dg = d(1, ell, ell);
            for x in 0..l {
                reps.push(prod(&[&u(sym(z0(), z0(), r64(x))), &dg]));
            }
            reps.push(d(1, 1, ell));
        }
        (HeckeOp::T1, _) => {
            let lr = ppow(ell, -(r as i64));
            let dg = d(ell, ell, ell);
            for x in 0..l {
                for y in 0..l {
                    for z in 0..l {
                        reps.push(prod(&[&u(sym(r64(z) * &lr, r64(y), r64(x))), &dg]));
                    }
                }
            }
            let dg = d(ell, 1, ell);
            for x in 0..l {
                for z in 0..l {
                    reps.push(prod(&[&ax(x), &u(sym(r64(z) * &lr, z0(), z0())), &dg]));
                }
            }
            let wr = w(ell, r);
            let dg = d(ell, ell, ell);
            for x in 0..l {
                for y in 0..l {
                    reps.push(prod(&[&wr, &u(sym(z0(), r64(y), r64(x))), &dg]));
                }
            }
            let dg = d(ell, 1, ell);
            for x in 0..l {
                reps.push(prod(&[&wr, &ax(x), &dg]));
            }
        }
        (HeckeOp::T2, 0) => {
            let l2 = ell * ell;
            let dg = d(l2, ell, l2);
            for x in 0..l {
                for y in 0..l {
                    for z in 0..ll {
                        reps.push(prod(&[&ax(x), &u(sym(r64(z), r64(y), z0())), &dg]));
                    }
                }
            }
            let dg = d(ell, l2, l2);
            for c in 0..l {
                for dd in 0..ll {
                    reps.push(prod(&[&u(sym(z0(), r64(c), r64(dd))), &dg]));
                }
            }
            let dg = d(ell, 1, l2);
            for x in 0..l {
                reps.push(prod(&[&ax(x), &dg]));
            }
            let dg1 = d(1, ell, l2);
            reps.push(dg1.clone());
            for dd in units(ell) {
                reps.push(prod(&[&lower(sym(z0(), z0(), r64(dd * l))), &dg]));
            }
            for uu in units(ell) {
                reps.push(prod(&[&lower(sym(r64(uu * l), z0(), z0())), &dg1]));
            }
            for uu in units(ell) {
                for lam in units(ell) {
                    let a = a_mat(&m2::new(r64(1), r64(0), r64(lam), r64(1))).expect("invertible");
                    reps.push(prod(&[&lower(sym(z0(), z0(), r64(uu * l))), &a, &dg1]));
                }
            }
        }
        (HeckeOp::T2, _) => {
            let l2 = ell * ell;
            let lr = ppow(ell, -(r as i64));
            let lr1 = ppow(ell, 1 - r as i64);
            let dg = d(l2, ell, l2);
            for x in 0..l {
                for y in 0..l {
                    for z in 0..ll {
                        reps.push(prod(&[&ax(x), &u(sym(r64(z) * &lr, r64(y), z0())), &dg]));
                    }
                }
            }
            let wr = w(ell, r);
            for x in 0..l {
                for y in 0..l {
                    for z in 0..l {
                        reps.push(prod(&[
                            &wr,
                            &ax(x),
                            &u(sym(r64(z) * &lr1, r64(y), z0())),
                            &dg,
                        ]));
                    }
                }
            }
        }
    }
    CosetFamily { op, ell, r, reps }
}

fn lower(s: Mat2) -> GSpMat {
    l_mat(&s).expect("symmetric")
}

/// Outcome of the pairwise disjointness check.
#[derive(Clone, Debug, Serialize)]
pub struct DisjointReport {
    pub count: usize,
    pub pairs_checked: usize,
    pub violations: Vec<(usize, usize)>,
}

impl DisjointReport {
    pub fn disjoint(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `g_i^{-1} g_j` is outside `K^para(l^r)` for all `i != j`.
pub fn verify_left_disjoint(family: &CosetFamily) -> DisjointReport {
    let inverses: Vec<GSpMat> = family.reps.iter().map(GSpMat::inverse).collect();
    let n = family.reps.len();
    let violations: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let inv = &inverses[i];
            (i + 1..n)
                .filter(move |&j| {
                    let q = inv.mul(&family.reps[j]).expect("same realization");
                    in_paramodular_local(&q, family.ell, family.r, Realization::J)
                })
                .map(move |j| (i, j))
                .collect::<Vec<_>>()
        })
        .collect();
    DisjointReport {
        count: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        violations,
    }
}

/// Multiplier and elementary divisor checks at `r = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct DivisorReport {
    pub expected: [i64; 4],
    pub failures: Vec<usize>,
}

impl DivisorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For `r = 0`: every representative has the right multiplier and elementary divisors.
pub fn verify_double_coset_membership(family: &CosetFamily) -> Option<DivisorReport> {
    if family.r != 0 {
        return None;
    }
    let expected = family.op.divisors();
    let lambda = int(family.op.multiplier(family.ell) as i64);
    let failures = family
        .reps
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            *g.multiplier() != lambda
                || elementary_divisors(g.mat(), family.ell) != Some(expected)
        })
        .map(|(i, _)| i)
        .collect();
    Some(DivisorReport { expected, failures })
}

/// `l g_i^{-1}` (T1) or `l^2 h_j^{-1}` (T2).
pub fn global_reps(op: HeckeOp, ell: u64, r: u32) -> Vec<GSpMat> {
    let s = int(op.multiplier(ell) as i64);
    coset_reps(op, ell, r)
        .reps
        .iter()
        .map(|g| g.inverse().scale(&s))
        .collect()
}

/// Pairwise `Gamma^para(l^r)`-disjointness of the global representatives.
pub fn verify_global_disjoint(op: HeckeOp, ell: u64, r: u32) -> DisjointReport {
    let reps = global_reps(op, ell, r);
    let level = upow(ell, r);
    let n = reps.len();
    let mut violations = Vec::new();
    for i in 0..n {
        let inv = reps[i].inverse();
        for j in i + 1..n {
            let q = reps[j].mul(&inv).expect("same realization");
            if in_paramodular_global(&q, level) {
                violations.push((i, j));
            }
        }
    }
    DisjointReport {
        count: n,
        pairs_checked: n * n.saturating_sub(1) / 2,
        violations,
    }
}

/// JSON summary for `verify cosets`.
#[derive(Clone, Debug, Serialize)]
pub struct CosetReport {
    pub op: HeckeOp,
    pub ell: u64,
    pub r: u32,
    pub count: usize,
    pub expected_count: usize,
    pub disjoint: bool,
    pub violations: Vec<(usize, usize)>,
    pub global_disjoint: bool,
    /// `None` when skipped (`r >= 1`).
    pub divisors_ok: Option<bool>,
    pub multipliers_ok: bool,
}

impl CosetReport {
    pub fn passed(&self) -> bool {
        self.count == self.expected_count
            && self.disjoint
            && self.global_disjoint
            && self.multipliers_ok
            && self.divisors_ok.unwrap_or(true)
    }
}

/// Counts, local and global disjointness, multipliers and divisors.
pub fn verify_cosets(op: HeckeOp, ell: u64, r: u32) -> CosetReport {
    let family = coset_reps(op, ell, r);
    let local = verify_left_disjoint(&family);
    let global = verify_global_disjoint(op, ell, r);
    let lambda = int(op.multiplier(ell) as i64);
    CosetReport {
        op,
        ell,
        r,
        count: family.reps.len(),
        expected_count: op.expected_count(ell, r),
        disjoint: local.disjoint(),
        violations: local.violations,
        global_disjoint: global.disjoint(),
        divisors_ok: verify_double_coset_membership(&family).map(|d| d.passed()),
        multipliers_ok: family.reps.iter().all(|g| *g.multiplier() == lambda),
    }
}
