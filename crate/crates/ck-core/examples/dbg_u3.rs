use ck_core::contraction::*;
use ck_core::groups::GroupKind;
use ck_core::pimenov::{JValuation, JValue};

fn main() {
    let v = JValuation::new(vec![JValue::Iota, JValue::One]);
    let spec = ContractionSpec::new(GroupKind::UUnitary, 2, v).unwrap();
    let rep = verify_decomposition(&spec).unwrap();
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
}
