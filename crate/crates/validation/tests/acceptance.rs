//! One test per acceptance criterion. Each prints a single PASS/FAIL line.

use switchlab_validation::{self as acceptance, CriterionResult, DEFAULT_SEED};

fn report(r: CriterionResult) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_closed_form_branches() {
    report(acceptance::criterion_01(DEFAULT_SEED));
}

#[test]
fn criterion_02_perfect_communication() {
    report(acceptance::criterion_02());
}

#[test]
fn criterion_03_dephasing_degeneracy() {
    report(acceptance::criterion_03());
}

#[test]
fn criterion_04_corrected_switch_tmatrix() {
    report(acceptance::criterion_04());
}

#[test]
fn criterion_05_qrac_curve_and_threshold() {
    report(acceptance::criterion_05());
}

#[test]
fn criterion_06_steering_curve_and_threshold() {
    report(acceptance::criterion_06());
}

#[test]
fn criterion_07_ppt_matches_octahedron() {
    report(acceptance::criterion_07(DEFAULT_SEED));
}

#[test]
fn criterion_08_controlled_ops_keep_eb_branches_eb() {
    report(acceptance::criterion_08(DEFAULT_SEED));
}

#[test]
fn criterion_09_noisy_control() {
    report(acceptance::criterion_09());
}

#[test]
fn criterion_10_coherence_closed_form() {
    report(acceptance::criterion_10());
}

#[test]
fn criterion_11_scan_statistics() {
    report(acceptance::criterion_11(DEFAULT_SEED));
}

#[test]
fn criterion_12_minus_branch_geometry() {
    report(acceptance::criterion_12(DEFAULT_SEED));
}
