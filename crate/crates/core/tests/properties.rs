#[path = "support/properties.rs"]
#[allow(dead_code)]
mod properties;

use properties::CASES;

#[test]
fn maurer_cartan_closure() {
    properties::maurer_cartan_closure(CASES).unwrap();
}

#[test]
fn category_axioms_and_leibniz() {
    properties::category_axioms(CASES).unwrap();
}

#[test]
fn double_dual_and_zig_zag() {
    properties::duality_identities(CASES).unwrap();
}

#[test]
fn adjunction_dimensions() {
    properties::adjunction_dims(CASES).unwrap();
}

#[test]
fn reports_are_deterministic() {
    properties::report_determinism(CASES).unwrap();
}
