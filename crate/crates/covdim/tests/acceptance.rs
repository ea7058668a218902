//! The acceptance gate: one test per criterion, each delegating to the
//! named claim in `covdim::verify` and printing its PASS line with timing.
//! Run with `cargo test -p covdim --test acceptance -- --nocapture` to see
//! every line; tolerances are exact integer equality throughout.

use covdim::verify::{run_claim, ClaimContext};

fn ctx() -> ClaimContext {
    ClaimContext {
        seed: 0xC0D1,
        workers: 4,
        ..ClaimContext::default()
    }
}

fn check(criterion: &str, claim: &str) {
    let outcome = run_claim(claim, &ctx()).expect("claim is registered");
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    println!(
        "[{status}] {criterion} / {claim} ({} ms): {}",
        outcome.millis, outcome.detail
    );
    assert!(
        outcome.pass,
        "{criterion} via claim `{claim}`: {}",
        outcome.detail
    );
}

#[test]
fn criterion_01_worked_example() {
    check("criterion-01", "worked-example");
}

#[test]
fn criterion_02_gamma_route_equivalence() {
    check("criterion-02", "gamma-three-routes");
}

#[test]
fn criterion_03_critical_theorem() {
    check("criterion-03", "critical-theorem");
}

#[test]
fn criterion_04_mds_weight_distribution() {
    check("criterion-04", "mds-weights");
}

#[test]
fn criterion_05_dual_hamming_swd() {
    check("criterion-05", "dual-hamming-swd");
}

#[test]
fn criterion_06_klove_counts_and_d4_positivity() {
    check("criterion-06", "klove-an");
    check("criterion-06", "d4-positivity");
}

#[test]
fn criterion_07_exhaustive_conjecture_verification() {
    check("criterion-07", "conjecture-q2");
    check("criterion-07", "conjecture-q3");
}

#[test]
fn criterion_08_classification_biconditionals() {
    check("criterion-08", "dperp3-biconditional");
    check("criterion-08", "parity-dual-gamma");
}

#[test]
fn criterion_09_block_construction() {
    check("criterion-09", "block-construction");
}

#[test]
fn criterion_10_search_determinism() {
    check("criterion-10", "search-determinism");
}
