//! The shared property suites at reduced sample counts. The acceptance
//! target in the CLI crate runs them at full size.

use hahnfield::testing::suites;

fn check(name: &str, r: suites::SuiteResult) {
    match r {
        Ok(n) => assert!(n > 0, "{name}: no samples"),
        Err(e) => panic!("{name}: {e}"),
    }
}

#[test]
fn valuation_axioms() {
    check("valuation", suites::valuation_axioms(11, 2000));
}

#[test]
fn series_field_axioms() {
    check("series field", suites::series_field_axioms(12, 2000));
}

#[test]
fn series_order() {
    check("series order", suites::series_order(13, 2000));
}

#[test]
fn logfield_axioms() {
    check("logfield", suites::logfield_axioms(14, 2000));
}

#[test]
fn ultrametric() {
    check("ultrametric", suites::ultrametric(15, 2000));
}

#[test]
fn nested_intervals() {
    check("nested intervals", suites::nested_intervals(16, 500));
}

#[test]
fn quasi_st() {
    suites::quasi_st_examples().unwrap();
    check("quasi_st", suites::quasi_st_properties(17, 500));
}

#[test]
fn round_trip() {
    check("round trip", suites::round_trip(18, 300));
}

#[test]
fn substitution_homomorphism() {
    check("substitution", suites::substitution_homomorphism(19, 300));
}

#[test]
fn dominance() {
    check("dominance", suites::dominance(20, 10));
}

#[test]
fn tower_agreement() {
    check("tower", suites::tower_agreement(21, 1000));
}
