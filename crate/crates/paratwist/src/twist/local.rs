//! Discretization of p-adic integrals of the form
//! `c * prefix * integral chi(...) pi(g(x)) v dx` into formal coset sums.
//!
//! Each integration variable ranges over a compact open domain of `Q_p`. At
//! depth `e` the domain is replaced by residues modulo `p^e`, each carrying
//! measure `p^{-e}`; this is exact once the coset of the integrand is constant
//! on residue classes, which [`find_depths`] and [`stability_check`] establish.

use rand::Rng;

use crate::cosets::{coset_key, CosetError, CosetKey, CosetSum, PAdicCtx, PEntry, ResidueMat, Zp};
use crate::exact::{upow, Realization};

/// Integration domains.
pub enum Domain {
    /// The integers `o`.
    Int,
    /// The maximal ideal `p`.
    Ideal,
    /// The units `o^x`.
    Unit,
    /// `o^x - (1 + p)`.
    UnitNotOne,
    /// `o^x - (-1 + p)`.
    UnitNotMinusOne,
    /// Units outside a set depending on earlier variables; the predicate
    /// receives all variable values and reports membership in the excluded set.
    UnitExcluding(Box<dyn Fn(&[Zp]) -> bool + Send + Sync>),
}

impl Domain {
    fn admits(&self, p: u64, x: u64, vals: &[Zp]) -> bool {
        let r = x % p;
        match self {
            Domain::Int => true,
            Domain::Ideal => r == 0,
            Domain::Unit => r != 0,
            Domain::UnitNotOne => r != 0 && r != 1 % p,
            Domain::UnitNotMinusOne => r != 0 && r != p - 1,
            Domain::UnitExcluding(f) => r != 0 && !f(vals),
        }
    }

    /// Minimum depth needed for the domain itself to be a union of residue classes.
    fn min_depth(&self) -> u32 {
        match self {
            Domain::Int => 0,
            _ => 1,
        }
    }

    fn is_dependent(&self) -> bool {
        matches!(self, Domain::UnitExcluding(_))
    }
}

/// One integration variable.
pub struct Var {
    pub name: &'static str,
    pub domain: Domain,
}

pub fn var(name: &'static str, domain: Domain) -> Var {
    Var { name, domain }
}

/// The integrand: returns the argument of the character and the matrix `g(x)`.
pub type Body = Box<dyn Fn(&PAdicCtx, &[Zp]) -> (Zp, ResidueMat) + Send + Sync>;

/// A single term `q^{q_exp} chi(-1)^{flag} prefix * integral chi(arg) pi(g) suffix v`.
pub struct LocalTerm {
    pub label: String,
    pub realization: Realization,
    pub q_exp: i32,
    pub chi_minus_one: bool,
    pub prefix: ResidueMat,
    pub suffix: Option<ResidueMat>,
    pub vars: Vec<Var>,
    pub body: Body,
    /// Fixed depths, when the term is already a finite sum (weights are then
    /// `q^{q_exp}` per tuple with no measure factor).
    pub fixed_depths: Option<Vec<u32>>,
}

impl LocalTerm {
    fn matrix(&self, ctx: &PAdicCtx, vals: &[Zp]) -> (Zp, ResidueMat) {
        let (arg, g) = (self.body)(ctx, vals);
        let mut m = self.prefix.mul(&g);
        if let Some(s) = &self.suffix {
            m = m.mul(s);
        }
        (arg, m)
    }

    fn key(&self, ctx: &PAdicCtx, vals: &[Zp]) -> Result<(i64, CosetKey), CosetError> {
        let (arg, m) = self.matrix(ctx, vals);
        Ok((legendre(ctx.p, arg.value()), coset_key(&m)?))
    }
}

/// The Legendre symbol of a residue modulo `p`.
pub fn legendre(p: u64, x: u64) -> i64 {
    let r = x % p;
    if r == 0 {
        return 0;
    }
    if p == 2 {
        return 1;
    }
    let mut acc = 1u64;
    let mut base = r;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if acc == 1 {
        1
    } else {
        -1
    }
}

/// `chi(-1)` for the quadratic character modulo `p`.
pub fn chi_minus_one(p: u64) -> i64 {
    legendre(p, p - 1)
}

/// Enumerate the admissible residue tuples at the given depths.
pub fn for_each_tuple(ctx: &PAdicCtx, vars: &[Var], depths: &[u32], mut f: impl FnMut(&[Zp])) {
    let n = vars.len();
    let mut vals: Vec<Zp> = vec![ctx.z(0); n];
    fn rec(
        ctx: &PAdicCtx,
        vars: &[Var],
        depths: &[u32],
        i: usize,
        vals: &mut Vec<Zp>,
        f: &mut dyn FnMut(&[Zp]),
    ) {
        if i == vars.len() {
            if vars.iter().enumerate().all(|(j, v)| {
                !v.domain.is_dependent() || v.domain.admits(ctx.p, vals[j].value(), vals)
            }) {
                f(vals);
            }
            return;
        }
        let m = upow(ctx.p, depths[i]);
        for x in 0..m {
            if !vars[i].domain.is_dependent() && !vars[i].domain.admits(ctx.p, x, vals) {
                continue;
            }
            vals[i] = ctx.z(x as i128);
            rec(ctx, vars, depths, i + 1, vals, f);
        }
    }
    rec(ctx, vars, depths, 0, &mut vals, &mut f);
}

/// Number of admissible tuples.
pub fn tuple_count(ctx: &PAdicCtx, vars: &[Var], depths: &[u32]) -> u64 {
    let mut n = 0;
    for_each_tuple(ctx, vars, depths, |_| n += 1);
    n
}

/// Add `factor * term` discretized at `depths` to `sum`.
pub fn discretize_into(
    ctx: &PAdicCtx,
    term: &LocalTerm,
    depths: &[u32],
    factor: i64,
    sum: &mut CosetSum,
) -> Result<u64, CosetError> {
    let measure: i32 = if term.fixed_depths.is_some() {
        0
    } else {
        depths.iter().map(|&d| d as i32).sum()
    };
    let exp = term.q_exp - measure;
    let sign = factor
        * if term.chi_minus_one {
            chi_minus_one(ctx.p)
        } else {
            1
        };
    let mut err = None;
    let mut count = 0;
    for_each_tuple(ctx, &term.vars, depths, |vals| {
        if err.is_some() {
            return;
        }
        match term.key(ctx, vals) {
            Ok((chi, key)) => {
                if chi != 0 {
                    sum.add_key(key, sign * chi, exp);
                }
                count += 1;
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}

fn random_tuple(ctx: &PAdicCtx, vars: &[Var], depth: u32, rng: &mut impl Rng) -> Vec<Zp> {
    let m = upow(ctx.p, depth);
    loop {
        let vals: Vec<Zp> = (0..vars.len())
            .map(|_| ctx.z(rng.random_range(0..m) as i128))
            .collect();
        if vars
            .iter()
            .enumerate()
            .all(|(j, v)| v.domain.admits(ctx.p, vals[j].value(), &vals))
        {
            return vals;
        }
    }
}

/// For each variable, the least depth at which random shifts by multiples of
/// `p^depth` leave the coset and the character value unchanged.
pub fn find_depths(
    ctx: &PAdicCtx,
    term: &LocalTerm,
    max_depth: u32,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<Vec<u32>, CosetError> {
    if let Some(d) = &term.fixed_depths {
        return Ok(d.clone());
    }
    let probe_depth = max_depth + 4;
    let mut out = Vec::with_capacity(term.vars.len());
    for (v, var) in term.vars.iter().enumerate() {
        let mut chosen = None;
        'depth: for e in var.domain.min_depth()..=max_depth {
            for _ in 0..samples {
                let base = random_tuple(ctx, &term.vars, probe_depth, rng);
                let k0 = term.key(ctx, &base)?;
                let shift = upow(ctx.p, e) as i128 * rng.random_range(1..=upow(ctx.p, 3)) as i128;
                let mut moved = base.clone();
                moved[v] = moved[v] + ctx.z(shift);
                if !term
                    .vars
                    .iter()
                    .enumerate()
                    .all(|(j, w)| w.domain.admits(ctx.p, moved[j].value(), &moved))
                {
                    continue 'depth;
                }
                if term.key(ctx, &moved)? != k0 {
                    continue 'depth;
                }
            }
            chosen = Some(e);
            break;
        }
        out.push(
            chosen
                .ok_or(CosetError::Precision)?
                .max(var.domain.min_depth()),
        );
    }
    Ok(out)
}

/// Check on a random subsample of tuples that refining every variable by one
/// more digit does not split any residue class.
pub fn stability_check(
    ctx: &PAdicCtx,
    term: &LocalTerm,
    depths: &[u32],
    fraction: f64,
    rng: &mut impl Rng,
) -> Result<bool, CosetError> {
    let mut ok = true;
    let mut err = None;
    for_each_tuple(ctx, &term.vars, depths, |vals| {
        if !ok || err.is_some() || rng.random::<f64>() >= fraction {
            return;
        }
        let base = match term.key(ctx, vals) {
            Ok(k) => k,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        for (v, &d) in depths.iter().enumerate() {
            for t in 1..ctx.p {
                let mut moved = vals.to_vec();
                moved[v] = moved[v] + ctx.z((upow(ctx.p, d) * t) as i128);
                if !term
                    .vars
                    .iter()
                    .enumerate()
                    .all(|(j, w)| w.domain.admits(ctx.p, moved[j].value(), &moved))
                {
                    ok = false;
                    return;
                }
                match term.key(ctx, &moved) {
                    Ok(k) if k == base => {}
                    Ok(_) => {
                        ok = false;
                        return;
                    }
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(ok),
    }
}

/// Entry helpers for building integrands.
pub struct Ent<'a>(pub &'a PAdicCtx);

impl Ent<'_> {
    pub fn v(&self, x: Zp, e: i32) -> PEntry {
        PEntry { x, e }
    }
    pub fn i(&self, x: i128, e: i32) -> PEntry {
        self.0.pi(x, e)
    }
    pub fn one(&self) -> PEntry {
        self.0.pi(1, 0)
    }
    pub fn zero(&self) -> PEntry {
        self.0.pi(0, 0)
    }
    pub fn neg(&self, t: PEntry) -> PEntry {
        PEntry { x: -t.x, e: t.e }
    }
}

/// `X(s) = [[1, s, 0, 0], [0, 1, 0, 0], [0, 0, 1, -s], [0, 0, 0, 1]]` in `J'`.
pub fn x_jp(ctx: &PAdicCtx, s: PEntry) -> ResidueMat {
    let b = Ent(ctx);
    let (o, z) = (b.one(), b.zero());
    ctx.mat(
        [
            [o, s, z, z],
            [z, o, z, z],
            [z, z, o, b.neg(s)],
            [z, z, z, o],
        ],
        0,
    )
}

/// `Y = [[1, 0, y13, y14], [0, 1, y23, y24], [0, 0, 1, 0], [0, 0, 0, 1]]` in `J'`.
pub fn y_jp(ctx: &PAdicCtx, y13: PEntry, y14: PEntry, y23: PEntry, y24: PEntry) -> ResidueMat {
    let b = Ent(ctx);
    let (o, z) = (b.one(), b.zero());
    ctx.mat(
        [
            [o, z, y13, y14],
            [z, o, y23, y24],
            [z, z, o, z],
            [z, z, z, o],
        ],
        0,
    )
}

/// `A(P)` for upper triangular `P = [[p11, p12], [0, p22]]` with `p11`, `p22` powers of `p` (realization `J`).
pub fn a_upper_j(ctx: &PAdicCtx, e11: i32, p12: PEntry, e22: i32) -> ResidueMat {
    let b = Ent(ctx);
    let z = b.zero();
    // P^{-T} = [[p^{-e11}, 0], [-p12 p^{-e11-e22}, p^{-e22}]]
    let low = PEntry {
        x: -p12.x,
        e: p12.e - e11 - e22,
    };
    ctx.mat(
        [
            [b.i(1, e11), p12, z, z],
            [z, b.i(1, e22), z, z],
            [z, z, b.i(1, -e11), z],
            [z, z, low, b.i(1, -e22)],
        ],
        0,
    )
}

/// `U(Q)` for symmetric `Q = [[q11, q12], [q12, q22]]` (realization `J`).
pub fn u_j(ctx: &PAdicCtx, q11: PEntry, q12: PEntry, q22: PEntry) -> ResidueMat {
    let b = Ent(ctx);
    let (o, z) = (b.one(), b.zero());
    ctx.mat(
        [
            [o, z, q11, q12],
            [z, o, q12, q22],
            [z, z, o, z],
            [z, z, z, o],
        ],
        0,
    )
}

/// Diagonal words in `eta` and `tau` (or `eta'`, `tau'` in realization `J`).
pub fn eta_tau(ctx: &PAdicCtx, realization: Realization, eta_pow: i32, tau_pow: i32) -> ResidueMat {
    let exps = match realization {
        Realization::JPrime => [-eta_pow, -tau_pow, tau_pow, eta_pow],
        Realization::J => [-eta_pow, -tau_pow, eta_pow, tau_pow],
    };
    ctx.diag(exps, 0)
}
