//! Products of Siegel forms by exact convolution of Fourier coefficients.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Zero;

use crate::exact::{Cyclotomic, Rational};
use crate::fourier::{CoefficientSource, Index};

/// `F G` with `c(T) = sum_{T1 + T2 = T} a(T1) b(T2)` over semidefinite `T1, T2`.
///
/// Both factors must have the same level. For level one and even weights the
/// cache is keyed by the reduced index.
pub struct ProductSource<'a> {
    a: &'a dyn CoefficientSource,
    b: &'a dyn CoefficientSource,
    cache: RwLock<HashMap<Index, Option<Cyclotomic>>>,
}

impl<'a> ProductSource<'a> {
    pub fn new(a: &'a dyn CoefficientSource, b: &'a dyn CoefficientSource) -> Option<Self> {
        (a.level() == b.level()).then(|| ProductSource {
            a,
            b,
            cache: RwLock::new(HashMap::new()),
        })
    }

    fn reducible(&self) -> bool {
        self.a.level() == 1 && self.a.weight() % 2 == 0 && self.b.weight() % 2 == 0
    }

    fn convolve(&self, t: &Index) -> Option<Cyclotomic> {
        let level = self.a.level() as i64;
        let mut exact = Rational::zero();
        let mut cyclo = Cyclotomic::from_i64(0);
        let mut n1 = 0;
        while n1 <= t.n {
            for m1 in 0..=t.m {
                let n2 = t.n - n1;
                let m2 = t.m - m1;
                let b1 = isqrt(4 * n1 * m1);
                for r1 in -b1..=b1 {
                    let x = Index::new(n1, r1, m1);
                    let y = Index::new(n2, t.r - r1, m2);
                    if !y.is_semidefinite() {
                        continue;
                    }
                    let u = self.a.coefficient(&x)?;
                    if u.is_zero() {
                        continue;
                    }
                    let v = self.b.coefficient(&y)?;
                    if v.is_zero() {
                        continue;
                    }
                    match (u.to_rational(), v.to_rational()) {
                        (Some(p), Some(q)) => exact += p * q,
                        _ => cyclo = cyclo.try_add(&u.try_mul(&v).ok()?).ok()?,
                    }
                }
            }
            n1 += level;
        }
        cyclo.try_add(&Cyclotomic::rational(exact)).ok()
    }
}

fn isqrt(x: i64) -> i64 {
    let mut s = (x as f64).sqrt() as i64;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

impl CoefficientSource for ProductSource<'_> {
    fn weight(&self) -> i64 {
        self.a.weight() + self.b.weight()
    }

    fn level(&self) -> u64 {
        self.a.level()
    }

    fn coefficient(&self, idx: &Index) -> Option<Cyclotomic> {
        if !idx.is_semidefinite() || !idx.on_level(self.level()) {
            return Some(Cyclotomic::from_i64(0));
        }
        let key = if self.reducible() { idx.reduced() } else { *idx };
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = self.convolve(&key);
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, v.clone());
        v
    }
}
