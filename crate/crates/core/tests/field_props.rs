mod common;

use common::*;
use inversive::{Field, FieldKind, Sampler};
use proptest::prelude::*;

fn field(i: usize) -> Field {
    let fs = test_fields();
    fs[i % fs.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), i in 0usize..16) {
        let f = field(i);
        let mut g = Sampler::new(f, seed);
        let (a, b, c) = (g.element(), g.element(), g.element());
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, f.zero());
        prop_assert_eq!(&a * f.one(), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.inv(), f.one());
            prop_assert_eq!((&b / &a) * &a, b.clone());
        } else {
            prop_assert!(a.checked_inv().is_none());
        }
    }

    #[test]
    fn squares_have_roots(seed in any::<u64>(), i in 0usize..16) {
        let f = field(i);
        let mut g = Sampler::new(f, seed);
        for _ in 0..4 {
            let e = g.element();
            let sq = e.square();
            prop_assert!(f.is_square(&sq));
            let r = f.sqrt(&sq).expect("square");
            prop_assert_eq!(r.square(), sq);
        }
    }

    #[test]
    fn non_squares_have_no_roots(seed in any::<u64>(), i in 0usize..16) {
        let f = field(i);
        let mut g = Sampler::new(f, seed);
        let e = g.element();
        match f.sqrt(&e) {
            Some(r) => prop_assert_eq!(r.square(), e),
            None => prop_assert!(!f.is_square(&e)),
        }
    }

    #[test]
    fn rational_ordering(seed in any::<u64>()) {
        let f = q();
        let mut g = Sampler::new(f, seed);
        let (a, b, c) = (g.element(), g.element(), g.element());
        let sign = |x: &inversive::FieldElement| f.sign(x).expect("ordered");
        prop_assert!(sign(&(&a * &a)) >= 0);
        // a < b implies a + c < b + c
        let lt = |x: &inversive::FieldElement, y: &inversive::FieldElement| sign(&(y - x)) > 0;
        if lt(&a, &b) {
            prop_assert!(lt(&(&a + &c), &(&b + &c)));
        }
        // positives are closed under products
        if sign(&a) > 0 && sign(&b) > 0 {
            prop_assert!(sign(&(&a * &b)) > 0);
        }
    }
}

#[test]
fn element_parse_round_trip() {
    for f in test_fields() {
        let mut g = Sampler::new(f, 5);
        for _ in 0..50 {
            let e = g.element();
            assert_eq!(f.parse_element(&e.to_string()).unwrap(), e, "{f}: {e}");
        }
        assert_eq!(Field::parse(&f.to_string()).unwrap(), f);
    }
}

#[test]
fn only_rationals_are_ordered() {
    for f in test_fields() {
        let expect = matches!(f.kind(), FieldKind::Rationals);
        assert_eq!(f.is_ordered(), expect, "{f}");
    }
}
