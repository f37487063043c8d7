use adapted_basis::basis::{action_matrix, enumerate_basis, intersection_matrix};
use adapted_basis::invariants::{validate, validate_multiplicities};
use adapted_basis::rewriter::single_relator_presentation;
use adapted_basis::symplectic::{is_symplectic, symplectic_basis, transform_action};
use adapted_basis::{verify, ConjugacyInput, PrimeOrderData};
use proptest::prelude::*;

/// Valid unsorted rotation data with `p <= 7` and `t <= 6`.
fn class() -> impl Strategy<Value = PrimeOrderData> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 2usize..=6, 0u32..=2)
        .prop_flat_map(|(p, t, g0)| (Just(p), prop::collection::vec(1..p, t - 1), Just(g0)))
        .prop_filter_map("no valid completion", |(p, mut n, g0)| {
            let last = (p - n.iter().sum::<u32>() % p) % p;
            if last == 0 {
                return None;
            }
            n.insert(n.len() / 2, last);
            validate(p, &n, g0).ok()
        })
}

#[test]
fn json_input_drives_the_pipeline() {
    let input = ConjugacyInput::from_json(r#"{"p": 3, "n": [1, 1, 2, 1, 1], "g0": 0}"#).unwrap();
    let d = input.to_data().unwrap();
    assert_eq!(d.g, 3);
    assert!(verify(&d).passed());
    let back: ConjugacyInput = serde_json::from_str(&serde_json::to_string(&input).unwrap()).unwrap();
    assert_eq!(back, input);
}

#[test]
fn multiplicities_and_rotation_data_agree() {
    let a = validate(5, &[1, 1, 3], 1).unwrap();
    let b = validate_multiplicities(5, &[2, 0, 1, 0], 1).unwrap();
    assert_eq!(intersection_matrix(&a), intersection_matrix(&b));
    assert_eq!(action_matrix(&a), action_matrix(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_class_verifies(d in class()) {
        let report = verify(&d);
        prop_assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn order_of_fixed_points_is_irrelevant(d in class()) {
        let sorted = d.normalized();
        prop_assert_eq!(enumerate_basis(&d), enumerate_basis(&sorted));
        prop_assert_eq!(intersection_matrix(&d), intersection_matrix(&sorted));
        let (a, b) = (single_relator_presentation(&d).unwrap(), single_relator_presentation(&sorted).unwrap());
        prop_assert_eq!(a.relator(), b.relator());
    }

    #[test]
    fn symplectic_action_has_order_p(d in class()) {
        let chg = symplectic_basis(&intersection_matrix(&d).matrix).unwrap();
        let t = transform_action(&action_matrix(&d).matrix, &chg).unwrap();
        prop_assert!(is_symplectic(&t, &chg.target).unwrap());
        prop_assert_eq!(t.order(d.p), Some(d.p));
    }
}
