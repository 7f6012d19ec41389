//! The fourteen global families of the twisting map.
//!
//! Each family is `p^c * sum chi(w) F|_k U(Q) A(P)` over residues of its
//! parameters, with `Q` symmetric and `P` upper triangular with `p`-power
//! diagonal. The same families appear a second time as `prefix * A(P') U(Q')`
//! words in the `eta'`, `tau'` generators; [`verify_theorem_corollary`]
//! checks that the two descriptions define the same sum of cosets.

use serde::Serialize;

use crate::cosets::{PAdicCtx, PEntry, ResidueMat, Zp};
use crate::exact::{mod_inverse, ppow, Rational, Realization};

use super::identities::Identity;
use super::local::{a_upper_j, eta_tau, u_j, var, Body, Domain, Ent, LocalTerm};
use super::verify::{verify_identity, IdentityReport, LocalOptions};
use super::TwistError;

/// An exact number `num * p^exp` with `p` fixed by context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PNum {
    pub num: i128,
    pub exp: i32,
}

impl PNum {
    pub const ZERO: PNum = PNum { num: 0, exp: 0 };

    pub fn new(num: i128, exp: i32) -> Self {
        PNum { num, exp }
    }

    /// Normalize so that `p` does not divide `num`.
    pub fn reduced(self, p: i128) -> Self {
        let (mut num, mut exp) = (self.num, self.exp);
        if num == 0 {
            return PNum::ZERO;
        }
        while num % p == 0 {
            num /= p;
            exp += 1;
        }
        PNum { num, exp }
    }

    pub fn to_rational(self, p: u64) -> Rational {
        Rational::from_integer(self.num.into()) * ppow(p, self.exp as i64)
    }

    fn entry(self, ctx: &PAdicCtx) -> PEntry {
        ctx.pi(self.num, self.exp)
    }
}

/// One monomial `chi(chi_arg) U(Q) A(P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub chi_arg: i128,
    /// `(q11, q12, q22)`.
    pub q: [PNum; 3],
    /// `P = [[p^e11, p12], [0, p^e22]]` as `(e11, p12, e22)`.
    pub p: (i32, PNum, i32),
}

/// Domain of one summation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Param {
    pub name: &'static str,
    /// The parameter runs over residues modulo `p^modulus_exp`.
    pub modulus_exp: u32,
    pub unit: bool,
    pub not_one: bool,
}

const fn prm(name: &'static str, modulus_exp: u32, unit: bool, not_one: bool) -> Param {
    Param { name, modulus_exp, unit, not_one }
}

impl Param {
    pub fn admits(&self, p: u64, x: u64) -> bool {
        let r = x % p;
        (!self.unit || r != 0) && (!self.not_one || r != 1)
    }

    fn domain(&self) -> Domain {
        match (self.unit, self.not_one) {
            (true, true) => Domain::UnitNotOne,
            (true, false) => Domain::Unit,
            _ => Domain::Int,
        }
    }

    pub fn count(&self, p: u64) -> u64 {
        (0..p.pow(self.modulus_exp)).filter(|&x| self.admits(p, x)).count() as u64
    }
}

type EvalFn = fn(&Arith, &[i128]) -> Monomial;

/// A family `p^const_exp * sum chi(.) U(Q) A(P)`.
#[derive(Clone, Copy)]
pub struct Family {
    pub index: usize,
    pub const_exp: i32,
    pub params: &'static [Param],
    eval: EvalFn,
}

/// Integer arithmetic with inverses taken modulo a fixed power of `p`.
pub struct Arith {
    pub p: i128,
    modulus: i128,
}

impl Arith {
    pub fn new(p: u64) -> Self {
        Arith { p: p as i128, modulus: (p as i128).pow(6) }
    }
    pub fn inv(&self, x: i128) -> i128 {
        mod_inverse(x.rem_euclid(self.modulus), self.modulus).expect("parameter is a unit")
    }
    fn n(&self, num: i128, exp: i32) -> PNum {
        PNum::new(num, exp)
    }
}

fn mono(chi_arg: i128, q: [PNum; 3], p: (i32, PNum, i32)) -> Monomial {
    Monomial { chi_arg, q, p }
}

const Z: PNum = PNum::ZERO;

static FAMILIES: [Family; 14] = [
    Family { index: 1, const_exp: -11, params: &[prm("a", 3, true, false), prm("b", 3, true, false), prm("x", 3, true, false), prm("z", 4, false, false)], eval: |c, v| {
        let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
        mono(a * b, [c.n(z, -4), c.n(-b, -2), c.n(-c.inv(x), -1)], (0, c.n(a + x * b, -1), 0))
    } },
    Family { index: 2, const_exp: -11, params: &[prm("a", 3, true, false), prm("b", 3, true, false), prm("x", 3, true, true), prm("y", 3, true, true)], eval: |c, v| {
        let (a, b, x, y) = (v[0], v[1], v[2], v[3]);
        let q11 = -a * b * (1 - c.inv(1 - y) * x);
        let q22 = -a * c.inv(b) * c.inv(1 - x);
        mono(a * b * x * y, [c.n(q11, -3), c.n(-a, -2), c.n(q22, -1)], (1, c.n(b, -1), 0))
    } },
    Family { index: 3, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 3, true, false), prm("z", 1, true, true)], eval: |c, v| {
        let (a, b, z) = (v[0], v[1], v[2]);
        mono(b * (1 - z), [c.n(-b, -3), c.n(a, -2), c.n(-a * a * c.inv(b) * z, -1)], (1, Z, 0))
    } },
    Family { index: 4, const_exp: -10, params: &[prm("a", 4, false, false), prm("b", 3, true, false), prm("x", 4, true, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b, [c.n(a * x - b * c.p, -4), c.n(a, -2), Z], (1, c.n(x, -2), 0))
    } },
    Family { index: 5, const_exp: -9, params: &[prm("a", 3, true, false), prm("b", 3, true, false), prm("x", 3, false, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b, [c.n(a * x - b, -3), c.n(a, -2), Z], (1, c.n(x, -1), 0))
    } },
    Family { index: 6, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 2, true, false), prm("x", 1, true, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b * x, [c.n(b * (1 + x * c.p), -2), c.n(a, -2), c.n(a * a * c.inv(b), -2)], (2, Z, 0))
    } },
    Family { index: 7, const_exp: -7, params: &[prm("a", 3, true, false), prm("b", 1, true, false), prm("z", 4, false, false)], eval: |c, v| {
        let (a, b, z) = (v[0], v[1], v[2]);
        mono(a * b, [c.n(z, -4), c.n(b, -1), Z], (0, c.n(-a, -1), 1))
    } },
    Family { index: 8, const_exp: -9, params: &[prm("a", 3, true, false), prm("b", 3, true, false), prm("z", 3, true, true)], eval: |c, v| {
        let (a, b, z) = (v[0], v[1], v[2]);
        mono(a * b * z * (1 - z), [c.n(a * b * (1 - z), -3), c.n(a, -1), Z], (1, c.n(b, -1), 1))
    } },
    Family { index: 9, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 1, true, false), prm("x", 1, true, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b, [c.n(b, -1), Z, c.n(x, -1)], (2, c.n(a, 0), 1))
    } },
    Family { index: 10, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 1, true, false)], eval: |c, v| {
        let (a, b) = (v[0], v[1]);
        mono(b, [c.n(b, -1), Z, Z], (2, c.n(a, 0), 2))
    } },
    Family { index: 11, const_exp: -10, params: &[prm("a", 2, true, false), prm("b", 4, true, false), prm("x", 3, false, false), prm("z", 4, false, false)], eval: |c, v| {
        let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
        mono(a * b, [c.n(z, -4), c.n(a * c.p + x * b, -3), c.n(x, -2)], (0, c.n(b, -2), -1))
    } },
    Family { index: 12, const_exp: -12, params: &[prm("y", 4, false, false), prm("a", 4, true, false), prm("b", 3, true, false), prm("z", 3, true, true)], eval: |c, v| {
        let (y, a, b, z) = (v[0], v[1], v[2], v[3]);
        let q11 = a * (y - b * (1 - z) * c.p);
        let q22 = c.inv(a) * (y + b * c.p);
        mono(a * b * z * (1 - z), [c.n(q11, -4), c.n(y, -3), c.n(q22, -2)], (1, c.n(a, -2), -1))
    } },
    Family { index: 13, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 3, true, false), prm("x", 1, true, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b * x, [c.n(b * (1 + x), -1), c.n(a, -2), c.n(a * a * c.inv(b), -3)], (2, Z, -1))
    } },
    Family { index: 14, const_exp: -6, params: &[prm("a", 2, true, false), prm("b", 1, true, false), prm("x", 4, false, false)], eval: |c, v| {
        let (a, b, x) = (v[0], v[1], v[2]);
        mono(b, [c.n(b, -1), c.n(a, -2), c.n(x, -4)], (2, Z, -2))
    } },
];

/// The `i`-th family, `1 <= i <= 14`.
pub fn theorem_family(i: usize) -> Result<&'static Family, TwistError> {
    FAMILIES.get(i.wrapping_sub(1)).ok_or(TwistError::FamilyIndex(i))
}

pub fn families() -> &'static [Family; 14] {
    &FAMILIES
}

impl Family {
    /// Number of parameter tuples at `p`.
    pub fn size(&self, p: u64) -> u64 {
        self.params.iter().map(|q| q.count(p)).product()
    }

    pub fn monomial(&self, arith: &Arith, vals: &[i128]) -> Monomial {
        (self.eval)(arith, vals)
    }

    /// Visit every parameter tuple with its monomial.
    pub fn for_each(&self, p: u64, mut f: impl FnMut(&[i128], &Monomial)) {
        let arith = Arith::new(p);
        let mut vals = vec![0i128; self.params.len()];
        fn rec(fam: &Family, p: u64, arith: &Arith, i: usize, vals: &mut Vec<i128>, f: &mut dyn FnMut(&[i128], &Monomial)) {
            if i == fam.params.len() {
                let m = fam.monomial(arith, vals);
                f(vals, &m);
                return;
            }
            let q = fam.params[i];
            for x in 0..p.pow(q.modulus_exp) {
                if q.admits(p, x) {
                    vals[i] = x as i128;
                    rec(fam, p, arith, i + 1, vals, f);
                }
            }
        }
        rec(self, p, &arith, 0, &mut vals, &mut f);
    }

    fn vars(&self) -> Vec<super::local::Var> {
        self.params.iter().map(|q| var(q.name, q.domain())).collect()
    }

    fn depths(&self) -> Vec<u32> {
        self.params.iter().map(|q| q.modulus_exp).collect()
    }

    /// The family as a finite coset sum of the inverses `A(P^{-1}) U(-Q)`.
    pub fn inverse_term(&self, ctx: &PAdicCtx, const_exp: i32) -> LocalTerm {
        let fam = *self;
        let arith = Arith::new(ctx.p);
        let body: Body = Box::new(move |c, v| {
            let vals: Vec<i128> = v.iter().map(|z| z.value() as i128).collect();
            let m = fam.monomial(&arith, &vals);
            (c.z(m.chi_arg), monomial_inverse(c, &m))
        });
        LocalTerm {
            label: format!("family {}", self.index),
            realization: Realization::J,
            q_exp: const_exp,
            chi_minus_one: false,
            prefix: ctx.diag([0; 4], 0),
            suffix: None,
            vars: self.vars(),
            body,
            fixed_depths: Some(self.depths()),
        }
    }
}

/// `(U(Q) A(P))^{-1} = A(P^{-1}) U(-Q)` in the residue model.
pub fn monomial_inverse(c: &PAdicCtx, m: &Monomial) -> ResidueMat {
    let (e11, p12, e22) = m.p;
    let pinv12 = PNum::new(-p12.num, p12.exp - e11 - e22);
    let a = a_upper_j(c, -e11, pinv12.entry(c), -e22);
    let [q11, q12, q22] = m.q.map(|q| PNum::new(-q.num, q.exp).entry(c));
    a.mul(&u_j(c, q11, q12, q22))
}

/// `(eta', tau')` exponents of the prefix of the `i`-th word.
pub fn corollary_prefix(i: usize) -> (i32, i32) {
    [(0, 0), (1, 0), (1, 0), (1, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (2, 2), (0, -1), (1, -1), (2, -1), (2, -2)][i - 1]
}

/// The word `prefix * A([[1, s], [0, 1]]) * U(Q)` of the `i`-th family, with
/// `s` and `Q` computed in `Z_p`.
fn corollary_body(i: usize) -> Body {
    Box::new(move |c: &PAdicCtx, v: &[Zp]| {
        let e = Ent(c);
        let one = c.z(1);
        let pw = c.z(c.p as i128);
        let (chi, s, q): (Zp, Option<PEntry>, [PEntry; 3]) = match i {
            1 => {
                let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
                (a * b, Some(e.v(-(a + x * b), -1)), [e.v(z, -4), e.v(b, -2), e.v(x.inv(), -1)])
            }
            2 => {
                let (a, b, x, y) = (v[0], v[1], v[2], v[3]);
                let q11 = a * b * (one - (one - y).inv() * x);
                let q22 = a * b.inv() * (one - x).inv();
                (a * b * x * y, Some(e.v(b, -1)), [e.v(q11, -3), e.v(-a, -2), e.v(q22, -1)])
            }
            3 => {
                let (a, b, z) = (v[0], v[1], v[2]);
                (b * (one - z), None, [e.v(b, -3), e.v(a, -2), e.v(a * a * b.inv() * z, -1)])
            }
            4 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b, Some(e.v(x, -2)), [e.v(b * pw - a * x, -4), e.v(a, -2), e.zero()])
            }
            5 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b, Some(e.v(x, -1)), [e.v(b - a * x, -3), e.v(a, -2), e.zero()])
            }
            6 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b * x, None, [e.v(b * (one - x * pw), -2), e.v(a, -2), e.v(a * a * b.inv(), -2)])
            }
            7 => {
                let (a, b, z) = (v[0], v[1], v[2]);
                (a * b, Some(e.v(-a, -2)), [e.v(z, -4), e.v(b, -1), e.zero()])
            }
            8 => {
                let (a, b, z) = (v[0], v[1], v[2]);
                (a * b * z * (one - z), Some(e.v(b, -2)), [e.v(-(a * b * (one - z)), -3), e.v(a, -1), e.zero()])
            }
            9 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b, Some(e.v(a, -1)), [e.v(-b, -1), e.zero(), e.v(x, -1)])
            }
            10 => {
                let (a, b) = (v[0], v[1]);
                (b, Some(e.v(a, -2)), [e.v(-b, -1), e.zero(), e.zero()])
            }
            11 => {
                let (a, b, x, z) = (v[0], v[1], v[2], v[3]);
                (a * b, Some(e.v(b, -1)), [e.v(z, -4), e.v(x * b + a * pw, -3), e.v(-x, -2)])
            }
            12 => {
                let (y, a, b, z) = (v[0], v[1], v[2], v[3]);
                let q11 = a * (b * (one - z) * pw - y);
                let q22 = -(a.inv() * (y + b * pw));
                (a * b * z * (one - z), Some(e.v(a, -1)), [e.v(q11, -4), e.v(y, -3), e.v(q22, -2)])
            }
            13 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b * x, None, [e.v(b * (one - x), -1), e.v(a, -2), e.v(a * a * b.inv(), -3)])
            }
            14 => {
                let (a, b, x) = (v[0], v[1], v[2]);
                (b, None, [e.v(-b, -1), e.v(a, -2), e.v(x, -4)])
            }
            _ => unreachable!(),
        };
        let u = u_j(c, q[0], q[1], q[2]);
        let g = match s {
            Some(s) => a_upper_j(c, 0, s, 0).mul(&u),
            None => u,
        };
        (chi, g)
    })
}

/// The `i`-th word family as a finite coset sum in realization `J`.
pub fn corollary_term(ctx: &PAdicCtx, i: usize) -> Result<LocalTerm, TwistError> {
    let fam = theorem_family(i)?;
    let (ei, ti) = corollary_prefix(i);
    Ok(LocalTerm {
        label: format!("word {i}"),
        realization: Realization::J,
        q_exp: fam.const_exp,
        chi_minus_one: false,
        prefix: eta_tau(ctx, Realization::J, ei, ti),
        suffix: None,
        vars: fam.vars(),
        body: corollary_body(i),
        fixed_depths: Some(fam.depths()),
    })
}

/// Compare the `i`-th family with its word description as coset sums.
/// `const_override` replaces the constant of the family (negative controls).
pub fn verify_theorem_corollary(p: u64, i: usize, const_override: Option<i32>) -> Result<IdentityReport, TwistError> {
    let ctx = PAdicCtx::new(p);
    let fam = theorem_family(i)?;
    let id = Identity {
        name: format!("family-{i}"),
        lhs: vec![fam.inverse_term(&ctx, const_override.unwrap_or(fam.const_exp))],
        rhs: vec![corollary_term(&ctx, i)?],
    };
    verify_identity(&ctx, &id, &LocalOptions::default())
}
