//! Acceptance suite: one test per criterion, so the harness prints one
//! pass/fail line each. The shared implementation lives in
//! `paramodular::acceptance` and is also what `verify-paper` runs.

use paramodular::acceptance::{self, CriterionOutcome};

fn assert_criterion(outcome: CriterionOutcome) {
    for line in &outcome.checks {
        println!(
            "  [{}] {}",
            if line.passed { "pass" } else { "FAIL" },
            line.claim
        );
    }
    println!(
        "criterion {} ({}): {} in {} ms",
        outcome.id,
        outcome.name,
        if outcome.passed { "pass" } else { "FAIL" },
        outcome.elapsed_ms
    );
    assert!(outcome.passed, "criterion {} ({}) failed", outcome.id, outcome.name);
}

#[test]
fn criterion_1_threshold() {
    assert_criterion(acceptance::criterion_1_threshold());
}

#[test]
fn criterion_2_weight2_supply() {
    assert_criterion(acceptance::criterion_2_weight2_supply());
}

#[test]
fn criterion_3_index_chain() {
    assert_criterion(acceptance::criterion_3_index_chain());
}

#[test]
fn criterion_4_singularity_catalog() {
    assert_criterion(acceptance::criterion_4_singularity_catalog());
}

#[test]
fn criterion_5_eh_family() {
    assert_criterion(acceptance::criterion_5_eh_family());
}

/// Criterion 5 also pins the full per-residue tables as golden files.
#[test]
fn criterion_5_eh_family_golden_tables() {
    for (p, golden) in [
        (13u64, include_str!("golden/eh_p13.json")),
        (173, include_str!("golden/eh_p173.json")),
    ] {
        let table = paramodular::singularities::eh_series_table(p).unwrap();
        let current = serde_json::to_value(&table).unwrap();
        let pinned: serde_json::Value = serde_json::from_str(golden).unwrap();
        assert_eq!(current, pinned, "residue table changed for p = {p}");
    }
}

#[test]
fn criterion_6_toric_counting() {
    assert_criterion(acceptance::criterion_6_toric_counting());
}

#[test]
fn criterion_7_group_properties() {
    assert_criterion(acceptance::criterion_7_group_properties());
}

#[test]
fn criterion_8_audit_honesty() {
    assert_criterion(acceptance::criterion_8_audit_honesty());
}
