//! The `verify` subcommands.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::compute::{chi10_window, eigen_points, sample_points, load_siegel, CHI10_DISC};
use super::{points_or, CliError, CommutationArgs, ConsistencyArgs, CosetArgs, CosetOpArg, GlobalArgs, IdentitiesArgs, LocalArgs, Outcome};
use crate::charsum::{verify_sum_identity, SUM_IDENTITIES};
use crate::cosets::PAdicCtx;
use crate::exact::upow;
use crate::forms::{gritsenko_lift, phi10, LiftSource, ProductSource};
use crate::fourier::{CoefficientSource, Index, ReducedLookup};
use crate::hecke::{commutation_suite, verify_cosets, verify_t1_relation, CommutationOptions, HeckeOp};
use crate::properties::{flipup_suite, gauss_law, hecke_factorization_suite, multiplier_suite, oracle_equality, PropertyReport};
use crate::twist::{
    identity, lemma_p3, reparametrization_complement, verify_identity, verify_theorem_corollary, IdentityReport,
    LocalOptions, IDENTITY_NAMES,
};

pub(super) fn cosets(a: &CosetArgs) -> Result<Outcome, CliError> {
    let ops = match a.op {
        Some(CosetOpArg::T1) => vec![HeckeOp::T1],
        Some(CosetOpArg::T2) => vec![HeckeOp::T2],
        None => vec![HeckeOp::T1, HeckeOp::T2],
    };
    let ells = a.ell.map(|l| vec![l]).unwrap_or_else(|| vec![2, 3]);
    if let Some(l) = ells.iter().find(|&&l| !crate::exact::is_prime(l)) {
        return Err(CliError::Usage(format!("{l} is not prime")));
    }
    let rs = a.r.map(|r| vec![r]).unwrap_or_else(|| vec![0, 1, 2]);
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for &op in &ops {
        for &ell in &ells {
            for &r in &rs {
                let rep = verify_cosets(op, ell, r);
                summary.push(format!(
                    "{op:?} l = {ell} r = {r}: {} cosets (expected {}), disjoint {}, divisors {}",
                    rep.count,
                    rep.expected_count,
                    rep.disjoint && rep.global_disjoint,
                    rep.divisors_ok.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into())
                ));
                reports.push(rep);
            }
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    Ok(Outcome { passed, result: json!({ "families": reports }), summary })
}

fn identity_summary(r: &IdentityReport) -> String {
    format!("{} at p = {}: {} ({} mismatched cosets)", r.name, r.p, r.passed, r.mismatches)
}

pub(super) fn consistency(a: &ConsistencyArgs) -> Result<Outcome, CliError> {
    let families: Vec<usize> = if a.families.is_empty() {
        (1..=14).collect()
    } else {
        a.families.clone()
    };
    let runs: Vec<(u64, usize)> = match a.p {
        Some(p) => families.iter().map(|&i| (p, i)).collect(),
        None if a.families.is_empty() => (1..=14).map(|i| (3, i)).chain([(5, 10)]).collect(),
        None => families.iter().map(|&i| (3, i)).collect(),
    };
    let mut results = Vec::new();
    let mut summary = Vec::new();
    for (p, i) in runs {
        let r = verify_theorem_corollary(p, i, None).map_err(|e| match e {
            crate::twist::TwistError::FamilyIndex(_) | crate::twist::TwistError::BadPrime(_) => {
                CliError::Usage(e.to_string())
            }
            e => e.into(),
        })?;
        summary.push(identity_summary(&r));
        results.push(json!({"p": p, "family": i, "passed": r.passed, "mismatches": r.mismatches}));
    }
    let passed = results.iter().all(|r| r["passed"] == json!(true));
    Ok(Outcome { passed, result: json!({ "families": results }), summary })
}

pub(super) fn local(a: &LocalArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let defaults = LocalOptions::default();
    let opts = LocalOptions {
        max_depth: g.depth.unwrap_or(defaults.max_depth),
        seed: g.seed,
        ..defaults
    };
    if a.p.is_multiple_of(2) || !crate::exact::is_prime(a.p) {
        return Err(CliError::Usage(format!("{} is not an odd prime", a.p)));
    }
    let ctx = PAdicCtx::new(a.p);
    let targets: Vec<String> = match a.target.as_str() {
        "all" => IDENTITY_NAMES
            .iter()
            .map(|s| s.to_string())
            .chain(["lemma-p3".to_string()])
            .collect(),
        "thm41" => vec!["full".into()],
        t => vec![t.to_string()],
    };
    let mut reports = Vec::new();
    let mut summary = Vec::new();
    for t in &targets {
        let id = match t.as_str() {
            "lemma-p3" => lemma_p3(&ctx, reparametrization_complement(a.p), true),
            "lemma-p3-literal" => lemma_p3(&ctx, reparametrization_complement(a.p), false),
            name => identity(&ctx, name).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown target {name:?}; expected all, thm41, lemma-p3, lemma-p3-literal or one of {}",
                    IDENTITY_NAMES.join(", ")
                ))
            })?,
        };
        let r = verify_identity(&ctx, &id, &opts)?;
        summary.push(identity_summary(&r));
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok(Outcome { passed, result: json!({ "identities": reports }), summary })
}

pub(super) fn commutation(a: &CommutationArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let lift = LiftSource::new(phi10(CHI10_DISC));
    let loaded = a.input.as_deref().map(load_siegel).transpose()?;
    let f = match &loaded {
        Some(f) => f.clone(),
        None => gritsenko_lift(lift.jacobi(), 1, chi10_window())?,
    };
    let reduced = loaded.as_ref().and_then(ReducedLookup::new);
    let source: &dyn CoefficientSource = match (&loaded, &reduced) {
        (_, Some(r)) => r,
        (Some(f), None) => f,
        (None, None) => &lift,
    };
    let out_level = f.level * upow(a.p, 4);
    let (n_max, m_max) = g.window.unwrap_or((out_level as i64, 1));
    let exact_window = Index::semidefinite_box(n_max, m_max, out_level);
    let opts = CommutationOptions {
        p: a.p,
        ell: a.ell,
        exact_window: exact_window.clone(),
        numeric_window: Index::semidefinite_box(2 * out_level as i64, 12, out_level),
        points: points_or(&a.points, sample_points())?,
        eigen_points: eigen_points(),
        tolerance: 1e-6,
        tail: g.precision,
    };
    let report = commutation_suite(source, &f, &opts)?;
    let mut summary: Vec<String> = report
        .relations
        .iter()
        .map(|r| {
            format!(
                "{}: {}{} ({} compared, deviation {:.1e})",
                r.name,
                r.passed,
                if r.vacuous { ", vacuous" } else { "" },
                r.compared,
                r.max_deviation
            )
        })
        .collect();
    let mut passed = report.passed();
    let mut result = json!({ "form": &report });
    if a.square {
        let sq = ProductSource::new(source, source)
            .ok_or_else(|| CliError::Usage("the square needs a single level".into()))?;
        let (rel, control) = verify_t1_relation(&sq, a.p, a.ell, &exact_window)?;
        summary.push(format!(
            "square, {}: {}{} ({} compared, control detected: {:?})",
            rel.name,
            rel.passed,
            if rel.vacuous { ", vacuous" } else { "" },
            rel.compared,
            control
        ));
        passed &= rel.passed;
        result["square"] = json!({ "relation": rel, "control_detects": control });
    }
    Ok(Outcome { passed, result, summary })
}

pub(super) fn identities(a: &IdentitiesArgs, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let sums = SUM_IDENTITIES
        .iter()
        .map(|name| verify_sum_identity(name, a.p))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| match e {
            crate::twist::TwistError::BadPrime(_) => CliError::Usage(e.to_string()),
            e => e.into(),
        })?;
    let properties: Vec<PropertyReport> = vec![
        gauss_law(&[3, 5, 7]),
        flipup_suite(100, &mut rng),
        multiplier_suite(a.cases, &mut rng),
        hecke_factorization_suite(a.cases, &mut rng),
        oracle_equality(a.oracle_cases, a.p, &mut rng)?,
    ];
    let mut summary: Vec<String> = sums
        .iter()
        .map(|s| {
            format!(
                "{} at p = {}: {}{} ({} cases)",
                s.name,
                s.p,
                s.passed,
                if s.control { ", negative control" } else { "" },
                s.cases
            )
        })
        .collect();
    summary.extend(
        properties
            .iter()
            .map(|r| format!("{}: {} ({} cases, {} failures)", r.name, r.passed, r.cases, r.failures)),
    );
    let passed = sums.iter().all(|s| s.as_expected()) && properties.iter().all(|r| r.passed);
    let result: Value = json!({ "character_sums": sums, "properties": properties });
    Ok(Outcome { passed, result, summary })
}
