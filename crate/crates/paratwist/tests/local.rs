use paratwist::cosets::PAdicCtx;
use paratwist::twist::{
    identity, lemma_p3, reparametrization_complement, theorem_family, verify_identity, verify_theorem_corollary,
    LocalOptions, IDENTITY_NAMES,
};

#[test]
fn every_named_identity_exists() {
    let ctx = PAdicCtx::new(3);
    for name in IDENTITY_NAMES {
        assert!(identity(&ctx, name).is_some(), "{name}");
    }
    assert!(identity(&ctx, "lemma-p9").is_none());
}

#[test]
fn selected_identities_hold_at_three() {
    let ctx = PAdicCtx::new(3);
    let opts = LocalOptions::default();
    for name in ["lemma-p1", "lemma-p2", "merge-eta", "reparam-w1-w2", "chi-elim-6"] {
        let r = verify_identity(&ctx, &identity(&ctx, name).unwrap(), &opts).unwrap();
        assert!(r.passed, "{name}: {} mismatches", r.mismatches);
    }
}

#[test]
fn lemma_p3_needs_the_shifted_range() {
    let ctx = PAdicCtx::new(3);
    let opts = LocalOptions::default();
    let complement = reparametrization_complement(3);
    let corrected = verify_identity(&ctx, &lemma_p3(&ctx, complement.clone(), true), &opts).unwrap();
    assert!(corrected.passed);
    let literal = verify_identity(&ctx, &lemma_p3(&ctx, complement, false), &opts).unwrap();
    assert!(!literal.passed);
    assert!(literal.mismatches > 0);
}

#[test]
fn theorem_families_match_their_corollary_forms() {
    for i in 1..=14 {
        let r = verify_theorem_corollary(3, i, None).unwrap();
        assert!(r.passed, "family {i}: {} mismatches", r.mismatches);
    }
    assert!(verify_theorem_corollary(5, 10, None).unwrap().passed);
    assert!(theorem_family(15).is_err());
}

#[test]
fn a_wrong_constant_is_detected() {
    let fam = theorem_family(1).unwrap();
    let r = verify_theorem_corollary(3, 1, Some(fam.const_exp + 1)).unwrap();
    assert!(!r.passed);
}
