//! Overlattice construction, short-vector enumeration and Milgram's formula
//! against independent oracles.

mod common;

use proptest::prelude::*;
use zcert_core::catalog::{member_overlattice, shipped_catalog};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn index_squared_law(seed in any::<u64>()) {
        let m = common::check_index_law(&mut common::rng(seed)).map_err(TestCaseError::fail)?;
        common::check_milgram(&m).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn odd_glue_is_rejected(seed in any::<u64>()) {
        common::check_rejects_odd_glue(&mut common::rng(seed)).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn enumeration_matches_box() {
    for cfg in common::small_configs() {
        for t in [-2, -4, -6] {
            common::check_enumeration(&cfg, t).unwrap();
        }
    }
    // roots of D4 and A4
    assert_eq!(common::check_enumeration(&"D4".parse().unwrap(), -2).unwrap(), 24);
    assert_eq!(common::check_enumeration(&"A4".parse().unwrap(), -2).unwrap(), 20);
}

#[test]
fn milgram_on_catalog_lattices() {
    let mut count = 0;
    for e in shipped_catalog() {
        for mi in 0..e.members.len() {
            let (m, _) = member_overlattice(&e, mi).unwrap();
            common::check_milgram(&m).unwrap_or_else(|err| panic!("{} member {mi}: {err}", e.id));
            count += 1;
        }
    }
    assert!(count > 250, "{count}");
}

#[test]
fn bareiss_oracle_sanity() {
    use num_bigint::BigInt;
    let m = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    assert_eq!(common::bareiss_det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    assert_eq!(common::bareiss_det(m(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]])), BigInt::from(-4));
    assert_eq!(common::bareiss_det(m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
}
