//! Integration tests for the claim ledger: catalogue hygiene, full-run
//! outcomes, filter semantics, and negative controls that force each
//! non-PASS path.

use serde_json::json;
use spectra_core::error::Error;
use spectra_core::ledger::{
    catalogue, run_catalogue, run_claim, Claim, ClaimKind, Status,
};

fn claim(id: &str, kind: ClaimKind, payload: serde_json::Value) -> Claim {
    Claim {
        id: id.into(),
        paper_ref: "test".into(),
        quote: "test".into(),
        kind,
        skip: None,
        payload,
    }
}

#[test]
fn catalogue_is_large_and_spans_both_proof_sections() {
    let claims = catalogue().unwrap();
    assert!(claims.len() >= 60, "only {} claims", claims.len());
    for prefix in [
        "S2.L-est",
        "S4.L-u3",
        "S4.L-so",
        "S4.L-lin",
        "S5.L-68",
        "S5.L-57",
        "S5.L-56",
        "S5.L-55",
        "mersenne",
    ] {
        assert!(
            claims.iter().any(|c| c.id.starts_with(prefix)),
            "no claims under {prefix}"
        );
    }
    for kind in [
        ClaimKind::ExactValue,
        ClaimKind::OrderBound,
        ClaimKind::BoundSearch,
        ClaimKind::Divisibility,
        ClaimKind::Enumeration,
        ClaimKind::NotInOmega,
        ClaimKind::InequalityGrid,
    ] {
        assert!(
            claims.iter().any(|c| c.kind == kind),
            "no claims of kind {kind:?}"
        );
    }
    for c in &claims {
        assert!(!c.quote.trim().is_empty(), "{} has an empty quote", c.id);
        assert!(!c.paper_ref.trim().is_empty(), "{} has no source ref", c.id);
    }
}

#[test]
fn prefix_filter_selects_exactly_the_subtree() {
    let report = run_catalogue(Some("S5.L-68")).unwrap();
    assert_eq!(report.claims.len(), 3);
    assert!(report.claims.iter().all(|r| r.id.starts_with("S5.L-68")));
    assert!(report.clean());
}

#[test]
fn unknown_filter_is_an_invalid_argument() {
    match run_catalogue(Some("S9.nothing")) {
        Err(Error::InvalidArgument(msg)) => assert!(msg.contains("S9.nothing")),
        other => panic!("expected invalid-argument error, got {other:?}"),
    }
}

#[test]
fn skipped_claims_carry_their_reason() {
    let report = run_catalogue(Some("S2.hyp")).unwrap();
    assert_eq!(report.summary.skipped, 1);
    let r = &report.claims[0];
    assert_eq!(r.status, Status::Skipped);
    assert!(r.evidence.contains("prior work"), "evidence: {}", r.evidence);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let mut a = run_catalogue(Some("S4.L-u3")).unwrap();
    let mut b = run_catalogue(Some("S4.L-u3")).unwrap();
    for r in a.claims.iter_mut().chain(b.claims.iter_mut()) {
        r.ms = 0;
    }
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn order_bound_failure_names_the_short_order() {
    // e(7, 2) = 3, so a demanded minimum of 4 must fail with the witness.
    let c = claim(
        "control.order",
        ClaimKind::OrderBound,
        json!({"r": "7", "bases": [2], "min": 4}),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.evidence.contains("e(7, 2) = 3"), "evidence: {}", r.evidence);
}

#[test]
fn exact_value_mismatch_fails_without_erroring() {
    let c = claim(
        "control.exact",
        ClaimKind::ExactValue,
        json!({"expr": "k(9,-5)", "expected": "5168"}),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.evidence.contains("5167"), "evidence: {}", r.evidence);
}

#[test]
fn enumeration_mismatch_reports_the_stray_tuple() {
    let c = claim(
        "control.enum",
        ClaimKind::Enumeration,
        json!({
            "vars": [{"name": "q", "domain": {"kind": "values", "values": [3, 5]}}],
            "constraints": ["q > 2"],
            "expected": [[3]]
        }),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.evidence.contains('5'), "evidence: {}", r.evidence);
}

#[test]
fn not_in_omega_abstains_rather_than_failing() {
    // 35 = 5 * 7 with e(5,3) = 4 and e(7,3) = 6: both primes lie in
    // pi(O12-(3)) and the two-prime criteria come back adjacent, which is
    // evidence for membership but not a proof, so the claim must abstain.
    let c = claim(
        "control.omega-adjacent",
        ClaimKind::NotInOmega,
        json!({"value": "35", "group": "O-:6:3"}),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Inconclusive, "evidence: {}", r.evidence);

    // 671 = 11 * 61 in the same group: the criteria prove non-adjacency
    // (the eta values sum past the rank), so this one is a clean PASS.
    let c = claim(
        "control.omega-nonadjacent",
        ClaimKind::NotInOmega,
        json!({"value": "671", "group": "O-:6:3"}),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Pass, "evidence: {}", r.evidence);

    // A bare prime inside pi(G) gives the checker nothing to work with.
    let c = claim(
        "control.omega-prime",
        ClaimKind::NotInOmega,
        json!({"value": "7", "group": "L:9:2"}),
    );
    let r = run_claim(&c).unwrap();
    assert_eq!(r.status, Status::Inconclusive);
}

#[test]
fn malformed_payload_is_a_malformed_claim_error() {
    let c = claim(
        "control.malformed",
        ClaimKind::ExactValue,
        json!({"nonsense": true}),
    );
    match run_claim(&c) {
        Err(Error::MalformedClaim { id, .. }) => assert_eq!(id, "control.malformed"),
        other => panic!("expected malformed-claim error, got {other:?}"),
    }
}

#[test]
fn bound_search_rejects_a_domain_hugging_its_maximum() {
    // Largest satisfier 7 sits in the top half of [3, 9]: the domain proves
    // nothing about where the true maximum is, so the claim is rejected.
    let c = claim(
        "control.tight",
        ClaimKind::BoundSearch,
        json!({
            "var": "q",
            "domain": {"kind": "odd_prime_power", "min": 3, "max": 9},
            "condition": "q < 8",
            "expected_max": 7
        }),
    );
    match run_claim(&c) {
        Err(Error::MalformedClaim { reason, .. }) => {
            assert!(reason.contains("widen the domain"), "reason: {reason}")
        }
        other => panic!("expected malformed-claim error, got {other:?}"),
    }
}

#[test]
fn full_catalogue_runs_clean() {
    let report = run_catalogue(None).unwrap();
    assert_eq!(report.summary.fail, 0, "failing claims present");
    assert_eq!(report.summary.inconclusive, 0);
    assert_eq!(report.summary.skipped, 3);
    assert_eq!(
        report.summary.pass + report.summary.skipped,
        report.claims.len()
    );

    let by_id = |id: &str| {
        report
            .claims
            .iter()
            .find(|r| r.id == id)
            .unwrap_or_else(|| panic!("missing claim {id}"))
    };
    let k9m5 = by_id("S4.L-u3.k9m5");
    assert_eq!(k9m5.status, Status::Pass);
    assert!(k9m5.evidence.contains("5167"));
    assert_eq!(by_id("mersenne.scan-1300").status, Status::Pass);
    assert_eq!(by_id("S4.L-so.s10-n9-sys").status, Status::Pass);
    assert_eq!(by_id("S5.L-56.l11-sys").status, Status::Pass);
}
