//! Applying the twisting map to Fourier expansions.
//!
//! [`apply_twist`] pulls each requested output index back through every
//! distinct `P` of every family and sums the collapsed character sums.
//! [`oracle_forward`] pushes single input coefficients forward through every
//! monomial without any grouping and serves as the reference.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::families::{families, Arith, Family, Monomial, PNum};
use super::local::legendre;
use super::TwistError;
use crate::exact::{ppow, Cyclotomic, Rational};
use crate::fourier::{CoefficientSource, FourierExpansion, Index, Window};

/// `P = [[p^e1, s], [0, p^e2]]`.
type PKey = (i32, PNum, i32);

#[derive(Clone, Debug)]
struct Item {
    chi: i8,
    exp: i32,
    /// `p^4 Q` entries reduced mod `p^4`.
    q: [i128; 3],
    deltas: Vec<[i128; 3]>,
}

#[derive(Clone, Debug)]
struct Group {
    key: PKey,
    items: Vec<Item>,
}

/// Precomputed monomial groups for a prime and weight.
#[derive(Clone, Debug)]
pub struct TwistPlan {
    p: u64,
    weight: i64,
    p4: i128,
    e_min: i32,
    e_len: usize,
    groups: Vec<Group>,
    collapsed: Vec<(usize, Vec<&'static str>)>,
}

fn scaled(p: i128, x: PNum, modulus: i128) -> i128 {
    assert!(x.exp >= -4, "denominator beyond p^4");
    (x.num % modulus * p.pow((x.exp + 4) as u32)).rem_euclid(modulus)
}

fn q_scaled(p: i128, m: &Monomial, modulus: i128) -> [i128; 3] {
    m.q.map(|x| scaled(p, x, modulus))
}

fn same_p(a: &PKey, b: &PKey, p: i128) -> bool {
    a.0 == b.0 && a.2 == b.2 && a.1.reduced(p) == b.1.reduced(p)
}

fn sub3(a: [i128; 3], b: [i128; 3], m: i128) -> [i128; 3] {
    [0, 1, 2].map(|i| (a[i] - b[i]).rem_euclid(m))
}

/// Parameters over full residue ranges that only enter `Q`, and linearly.
fn collapsible(fam: &Family, p: u64, arith: &Arith) -> Vec<usize> {
    let pi = p as i128;
    let m4 = pi.pow(4);
    let mut out = Vec::new();
    let mut rng_state = 0x9e37_79b9_u64;
    'cand: for (j, prm) in fam.params.iter().enumerate() {
        if prm.unit || prm.not_one {
            continue;
        }
        for _ in 0..64 {
            let vals: Vec<i128> = fam
                .params
                .iter()
                .enumerate()
                .map(|(i, q)| {
                    if i == j {
                        return 0;
                    }
                    loop {
                        rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        let x = (rng_state >> 33) % p.pow(q.modulus_exp);
                        if q.admits(p, x) {
                            return x as i128;
                        }
                    }
                })
                .collect();
            if !linear_at(fam, arith, &vals, j, pi, m4, prm.modulus_exp) {
                continue 'cand;
            }
        }
        out.push(j);
    }
    out
}

fn with(vals: &[i128], j: usize, v: i128) -> Vec<i128> {
    let mut w = vals.to_vec();
    w[j] += v;
    w
}

fn linear_at(fam: &Family, arith: &Arith, vals: &[i128], j: usize, p: i128, m4: i128, e: u32) -> bool {
    let m0 = fam.monomial(arith, vals);
    let m1 = fam.monomial(arith, &with(vals, j, 1));
    let m2 = fam.monomial(arith, &with(vals, j, 2));
    let chi = |m: &Monomial| legendre(p as u64, m.chi_arg.rem_euclid(p) as u64);
    if chi(&m0) != chi(&m1) || chi(&m0) != chi(&m2) {
        return false;
    }
    if !same_p(&m0.p, &m1.p, p) || !same_p(&m0.p, &m2.p, p) {
        return false;
    }
    let (q0, q1, q2) = (q_scaled(p, &m0, m4), q_scaled(p, &m1, m4), q_scaled(p, &m2, m4));
    let d = sub3(q1, q0, m4);
    let d2 = sub3(q2, q0, m4);
    d2 == d.map(|x| (2 * x).rem_euclid(m4)) && d.iter().all(|x| (x * p.pow(e)).rem_euclid(m4) == 0)
}

impl TwistPlan {
    pub fn new(p: u64, weight: i64) -> Result<Self, TwistError> {
        if p.is_multiple_of(2) || !crate::exact::is_prime(p) {
            return Err(TwistError::BadPrime(p));
        }
        let pi = p as i128;
        let m4 = pi.pow(4);
        let arith = Arith::new(p);
        let mut groups: HashMap<PKey, Vec<Item>> = HashMap::new();
        let mut collapsed_names = Vec::new();
        for fam in families() {
            let coll = collapsible(fam, p, &arith);
            collapsed_names.push((fam.index, coll.iter().map(|&j| fam.params[j].name).collect()));
            let mut vals = vec![0i128; fam.params.len()];
            let mut err = None;
            outer(fam, p, &coll, 0, &mut vals, &mut |vals| {
                let m = fam.monomial(&arith, vals);
                let chi = legendre(p, m.chi_arg.rem_euclid(pi) as u64) as i8;
                let q0 = q_scaled(pi, &m, m4);
                let mut deltas = Vec::new();
                let mut exp = fam.const_exp + weight as i32 * (m.p.0 + m.p.2);
                for &j in &coll {
                    let e = fam.params[j].modulus_exp;
                    if !linear_at(fam, &arith, vals, j, pi, m4, e) {
                        err = Some(TwistError::Internal(format!(
                            "family {} is not linear in {}",
                            fam.index, fam.params[j].name
                        )));
                    }
                    let m1 = fam.monomial(&arith, &with(vals, j, 1));
                    deltas.push(sub3(q_scaled(pi, &m1, m4), q0, m4));
                    exp += e as i32;
                }
                for (a, &i) in coll.iter().enumerate() {
                    for (b, &j) in coll.iter().enumerate().skip(a + 1) {
                        let both = fam.monomial(&arith, &with(&with(vals, i, 1), j, 1));
                        let sum = [0, 1, 2].map(|c| (deltas[a][c] + deltas[b][c]).rem_euclid(m4));
                        if sub3(q_scaled(pi, &both, m4), q0, m4) != sum {
                            err = Some(TwistError::Internal(format!(
                                "family {} mixes collapsed parameters",
                                fam.index
                            )));
                        }
                    }
                }
                let key = (m.p.0, m.p.1.reduced(pi), m.p.2);
                groups.entry(key).or_default().push(Item { chi, exp, q: q0, deltas });
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let mut groups: Vec<Group> = groups
            .into_iter()
            .map(|(key, items)| Group { key, items })
            .collect();
        groups.sort_by_key(|g| (g.key.0, g.key.2, g.key.1.exp, g.key.1.num));
        let exps = groups.iter().flat_map(|g| g.items.iter().map(|i| i.exp));
        let e_min = exps.clone().min().unwrap_or(0);
        let e_max = exps.max().unwrap_or(0);
        Ok(TwistPlan {
            p,
            weight,
            p4: m4,
            e_min,
            e_len: (e_max - e_min + 1) as usize,
            groups,
            collapsed: collapsed_names,
        })
    }

    /// Number of distinct `P` and of remaining monomials after collapsing.
    pub fn size(&self) -> (usize, usize) {
        (self.groups.len(), self.groups.iter().map(|g| g.items.len()).sum())
    }

    /// Parameters summed in closed form, per family.
    pub fn collapsed(&self) -> &[(usize, Vec<&'static str>)] {
        &self.collapsed
    }

    /// The twisted coefficient at `out`, or `None` when an input is unknown.
    pub fn coefficient(
        &self,
        source: &dyn CoefficientSource,
        out: &Index,
    ) -> Result<Option<Cyclotomic>, TwistError> {
        let p = self.p as i128;
        let m4 = self.p4;
        let mut acc = vec![0i128; self.e_len * m4 as usize];
        let mut slow: Vec<Rational> = Vec::new();
        for g in &self.groups {
            let Some(t) = pull_back(out, &g.key, p) else { continue };
            if !t.is_semidefinite() || !t.on_level(source.level()) {
                continue;
            }
            let Some(a) = source.coefficient(&t) else {
                return Ok(None);
            };
            if a.is_zero() {
                continue;
            }
            let a = a.to_rational().ok_or(TwistError::NonRationalInput)?;
            let fast = a.is_integer().then(|| i128::try_from(a.to_integer()).ok()).flatten();
            if fast.is_none() && slow.is_empty() {
                slow = vec![Rational::zero(); m4 as usize];
            }
            let (n, r, m) = (t.n as i128 % m4, t.r as i128 % m4, t.m as i128 % m4);
            let tr = |q: &[i128; 3]| (n * q[0] + r * q[1] + m * q[2]).rem_euclid(m4);
            'item: for it in &g.items {
                for d in &it.deltas {
                    if tr(d) != 0 {
                        continue 'item;
                    }
                }
                let t_exp = tr(&it.q) as usize;
                match fast {
                    Some(v) => {
                        let slot = (it.exp - self.e_min) as usize * m4 as usize + t_exp;
                        acc[slot] += it.chi as i128 * v;
                    }
                    None => {
                        slow[t_exp] += &a * ppow(self.p, it.exp as i64) * Rational::from_integer(it.chi.into());
                    }
                }
            }
        }
        let mut sums = if slow.is_empty() { vec![Rational::zero(); m4 as usize] } else { slow };
        for (e, chunk) in acc.chunks(m4 as usize).enumerate() {
            let scale = ppow(self.p, e as i64 + self.e_min as i64);
            for (t, &c) in chunk.iter().enumerate() {
                if c != 0 {
                    sums[t] += Rational::from_integer(c.into()) * &scale;
                }
            }
        }
        Ok(Some(Cyclotomic::from_exponent_sums(self.p, 4, &sums)))
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

fn outer(fam: &Family, p: u64, coll: &[usize], i: usize, vals: &mut Vec<i128>, f: &mut dyn FnMut(&[i128])) {
    if i == fam.params.len() {
        f(vals);
        return;
    }
    if coll.contains(&i) {
        vals[i] = 0;
        return outer(fam, p, coll, i + 1, vals, f);
    }
    let q = fam.params[i];
    for x in 0..p.pow(q.modulus_exp) {
        if q.admits(p, x) {
            vals[i] = x as i128;
            outer(fam, p, coll, i + 1, vals, f);
        }
    }
}

/// The `T` with `P^T T P = T'`, if it is half-integral.
fn pull_back(out: &Index, key: &PKey, p: i128) -> Option<Index> {
    const K: i32 = 12;
    let (e1, s, e2) = *key;
    let pw = |e: i32| -> i128 {
        debug_assert!(e >= 0);
        p.pow(e as u32)
    };
    let scale = pw(K);
    let div = |x: i128| -> Option<i128> { (x % scale == 0).then_some(x / scale) };
    let n = div(out.n as i128 * pw(K - 2 * e1))?;
    let r = div(out.r as i128 * pw(K - e1 - e2) - 2 * n * s.num * pw(K + s.exp - e2))?;
    let m = div(
        out.m as i128 * pw(K - 2 * e2)
            - n * s.num * s.num * pw(K + 2 * s.exp - 2 * e2)
            - r * s.num * pw(K + s.exp - e2),
    )?;
    Some(Index::new(n as i64, r as i64, m as i64))
}

/// `T_chi(F)` on the requested output indices (level `N p^4`).
///
/// Indices whose inputs are not all known are left out of the window.
pub fn apply_twist(
    source: &dyn CoefficientSource,
    plan: &TwistPlan,
    outputs: &[Index],
) -> Result<FourierExpansion, TwistError> {
    let level = source.level();
    if level.is_multiple_of(plan.p) {
        return Err(TwistError::LevelNotCoprime(plan.p, level));
    }
    if source.weight() != plan.weight {
        return Err(TwistError::WeightMismatch(plan.weight, source.weight()));
    }
    let out_level = level * plan.p.pow(4);
    let results: Vec<Result<Option<(Index, Cyclotomic)>, TwistError>> = outputs
        .par_iter()
        .map(|o| Ok(plan.coefficient(source, o)?.map(|v| (*o, v))))
        .collect();
    let mut window = std::collections::BTreeSet::new();
    let mut values = Vec::new();
    for r in results {
        if let Some((i, v)) = r? {
            window.insert(i);
            values.push((i, v));
        }
    }
    let mut f = FourierExpansion::new(plan.weight, out_level, Window::List(window));
    for (i, v) in values {
        f.insert(i, v).map_err(|e| TwistError::Internal(e.to_string()))?;
    }
    Ok(f)
}

/// Output of the forward reference computation.
#[derive(Clone, Debug, Default)]
pub struct ForwardResult {
    /// Totals at indices of the output lattice.
    pub lattice: BTreeMap<Index, Cyclotomic>,
    /// Totals at every other image index, keyed by `p^6 (n, r, m)`.
    pub off_lattice: BTreeMap<[i128; 3], Cyclotomic>,
    /// Number of monomial contributions pushed forward.
    pub contributions: u64,
}

impl ForwardResult {
    pub fn off_lattice_cancels(&self) -> bool {
        self.off_lattice.values().all(Zero::is_zero)
    }
}

/// Push `sum a(T) e(tr(TZ))` forward through every monomial of every family.
///
/// No parameter is summed in closed form and nothing is grouped.
pub fn oracle_forward(
    inputs: &[(Index, i128)],
    p: u64,
    weight: i64,
    level: u64,
) -> ForwardResult {
    const S: u32 = 6;
    let pi = p as i128;
    let m4 = pi.pow(4);
    let scale = pi.pow(S);
    let pw = |e: i32| -> i128 { pi.pow((e + S as i32) as u32) };
    let mut buckets: HashMap<([i128; 3], i32, u32), i128> = HashMap::new();
    let mut contributions = 0u64;
    for fam in families() {
        fam.for_each(p, |_, m| {
            let chi = legendre(p, m.chi_arg.rem_euclid(pi) as u64) as i128;
            let (e1, s, e2) = m.p;
            let exp = fam.const_exp + weight as i32 * (e1 + e2);
            let q = q_scaled(pi, m, m4);
            for &(t, a) in inputs {
                let (n, r, mm) = (t.n as i128, t.r as i128, t.m as i128);
                let n_img = n * pw(2 * e1);
                let r_img = pi.pow(e1 as u32) * (2 * n * s.num * pw(s.exp) + r * pw(e2));
                let m_img = n * s.num * s.num * pw(2 * s.exp)
                    + r * s.num * pw(s.exp + e2)
                    + mm * pw(2 * e2);
                let phase = (n * q[0] + r * q[1] + mm * q[2]).rem_euclid(m4) as u32;
                *buckets.entry(([n_img, r_img, m_img], exp, phase)).or_default() += chi * a;
                contributions += 1;
            }
        });
    }
    let mut sums: HashMap<[i128; 3], Vec<Rational>> = HashMap::new();
    for ((key, exp, phase), c) in buckets {
        if c == 0 {
            continue;
        }
        let v = sums.entry(key).or_insert_with(|| vec![Rational::zero(); m4 as usize]);
        v[phase as usize] += Rational::from_integer(c.into()) * ppow(p, exp as i64);
    }
    let out_level = level as i128 * m4;
    let mut out = ForwardResult { contributions, ..Default::default() };
    for (key, v) in sums {
        let value = Cyclotomic::from_exponent_sums(p, 4, &v);
        let on_lattice = key.iter().all(|x| x % scale == 0) && (key[0] / scale) % out_level == 0;
        if on_lattice {
            let idx = Index::new((key[0] / scale) as i64, (key[1] / scale) as i64, (key[2] / scale) as i64);
            if !value.is_zero() {
                out.lattice.insert(idx, value);
            }
        } else {
            out.off_lattice.insert(key, value);
        }
    }
    out
}

/// Lazily evaluated `T_chi(F)` with a coefficient cache.
pub struct TwistSource<'a> {
    inner: &'a dyn CoefficientSource,
    plan: &'a TwistPlan,
    cache: std::sync::RwLock<HashMap<Index, Option<Cyclotomic>>>,
}

impl<'a> TwistSource<'a> {
    pub fn new(inner: &'a dyn CoefficientSource, plan: &'a TwistPlan) -> Result<Self, TwistError> {
        if inner.level().is_multiple_of(plan.p) {
            return Err(TwistError::LevelNotCoprime(plan.p, inner.level()));
        }
        if inner.weight() != plan.weight {
            return Err(TwistError::WeightMismatch(plan.weight, inner.weight()));
        }
        Ok(TwistSource {
            inner,
            plan,
            cache: std::sync::RwLock::new(HashMap::new()),
        })
    }
}

impl CoefficientSource for TwistSource<'_> {
    fn weight(&self) -> i64 {
        self.plan.weight
    }

    fn level(&self) -> u64 {
        self.inner.level() * self.plan.p.pow(4)
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        if let Some(v) = self.cache.read().expect("cache lock").get(idx) {
            return v.clone();
        }
        let v = if idx.on_level(self.level()) && idx.is_semidefinite() {
            self.plan.coefficient(self.inner, idx).ok().flatten()
        } else {
            Some(Cyclotomic::from_i64(0))
        };
        self.cache
            .write()
            .expect("cache lock")
            .insert(*idx, v.clone());
        v
    }
}
