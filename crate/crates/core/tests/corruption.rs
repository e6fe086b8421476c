use num_bigint::BigUint;

use euler_refine::cli::{cmd_verify, VerifyOptions, ANDRE_ENUM};
use euler_refine::seq::{euler_numbers, theorem_check_with};
use euler_refine::Refinements;

#[test]
fn corrupted_euler_prefix_is_caught() {
    let mut e = euler_numbers(22);
    e[6] += 1u32;
    let opts = VerifyOptions { max_n: 8, egf_order: 20, euler_override: Some(e.clone()), ..Default::default() };
    let set = cmd_verify(&opts).unwrap();
    assert!(!set.passed());
    let andre = set.get(ANDRE_ENUM).unwrap();
    assert_eq!(andre.failures().map(|f| f.n).collect::<Vec<_>>(), vec![6]);

    let set = theorem_check_with(&Refinements::from_euler_prefix(e), 20).unwrap();
    assert!(!set.passed());
}

#[test]
fn short_prefix_is_an_error() {
    let opts = VerifyOptions { euler_override: Some(vec![BigUint::from(1u32); 5]), ..Default::default() };
    assert!(cmd_verify(&opts).is_err());
}

#[test]
fn clean_verify_passes() {
    let set = cmd_verify(&VerifyOptions { max_n: 8, egf_order: 14, ..Default::default() }).unwrap();
    assert!(set.passed(), "{}", set.render_text());
}
