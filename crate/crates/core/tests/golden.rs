use opq_core::liealg::{pi, BasisLabel};
use opq_core::module::{extremal_vector, ExtremalSpec};
use opq_core::WeylOperator;

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/golden/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

#[test]
fn pi_minus_text_form() {
    let op = pi(BasisLabel::Minus(0, 0), 1, 1).unwrap();
    let text = op.to_text();
    assert_eq!(text, golden("pi_minus_1_1.txt"));
    assert_eq!(WeylOperator::from_text(&text).unwrap(), op);
}

#[test]
fn extremal_vector_text_form() {
    let v = extremal_vector(&ExtremalSpec::highest(3, 3, 1, 0, 0)).unwrap();
    assert_eq!(v.to_text(), golden("extremal_3_3_k1.txt"));
}
