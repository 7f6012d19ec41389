//! Exact verification of local identities as formal coset sums.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cosets::{CosetSum, PAdicCtx};

use super::identities::Identity;
use super::local::{discretize_into, find_depths, stability_check, tuple_count, LocalTerm};
use super::TwistError;

/// Parameters of the discretization.
#[derive(Clone, Debug)]
pub struct LocalOptions {
    pub max_depth: u32,
    pub samples: usize,
    pub stability_fraction: f64,
    pub seed: u64,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions {
            max_depth: 6,
            samples: 24,
            stability_fraction: 0.02,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermReport {
    pub label: String,
    pub depths: Vec<u32>,
    pub tuples: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub p: u64,
    pub lhs: Vec<TermReport>,
    pub rhs: Vec<TermReport>,
    /// Number of cosets whose coefficients disagree.
    pub mismatches: usize,
    pub passed: bool,
}

/// Depths at which `term` discretizes exactly, confirmed by a refinement check.
pub fn settle_depths(
    ctx: &PAdicCtx,
    term: &LocalTerm,
    opts: &LocalOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u32>, TwistError> {
    let mut depths = find_depths(ctx, term, opts.max_depth, opts.samples, rng)?;
    if term.fixed_depths.is_some() {
        return Ok(depths);
    }
    for _ in 0..3 {
        if stability_check(ctx, term, &depths, opts.stability_fraction, rng)? {
            return Ok(depths);
        }
        for d in depths.iter_mut() {
            *d += 1;
        }
    }
    Err(TwistError::Unstable(term.label.clone()))
}

/// Discretize both sides of `id` and compare coefficientwise.
pub fn verify_identity(
    ctx: &PAdicCtx,
    id: &Identity,
    opts: &LocalOptions,
) -> Result<IdentityReport, TwistError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut plan = Vec::new();
    for (side, terms) in [(1i64, &id.lhs), (-1, &id.rhs)] {
        for t in terms.iter() {
            let depths = settle_depths(ctx, t, opts, &mut rng)?;
            plan.push((side, t, depths));
        }
    }
    let den_exp = plan
        .iter()
        .map(|(_, t, d)| {
            let measure: i32 = if t.fixed_depths.is_some() {
                0
            } else {
                d.iter().map(|&x| x as i32).sum()
            };
            (measure - t.q_exp).max(0)
        })
        .max()
        .unwrap_or(0) as u32;
    let mut sum = CosetSum::new(ctx.p, den_exp);
    let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
    for (side, t, depths) in plan {
        let tuples = discretize_into(ctx, t, &depths, side, &mut sum)?;
        let r = TermReport {
            label: t.label.clone(),
            depths,
            tuples,
        };
        if side > 0 {
            lhs.push(r)
        } else {
            rhs.push(r)
        }
    }
    let mismatches = sum.support_len();
    Ok(IdentityReport {
        name: id.name.clone(),
        p: ctx.p,
        lhs,
        rhs,
        mismatches,
        passed: mismatches == 0,
    })
}

/// Total number of residue tuples needed for `id` at the settled depths.
pub fn identity_cost(
    ctx: &PAdicCtx,
    id: &Identity,
    opts: &LocalOptions,
) -> Result<u64, TwistError> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut total = 0;
    for t in id.lhs.iter().chain(id.rhs.iter()) {
        let d = find_depths(ctx, t, opts.max_depth, opts.samples, &mut rng)?;
        total += tuple_count(ctx, &t.vars, &d);
    }
    Ok(total)
}
