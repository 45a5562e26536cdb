mod common;

use common::strategies::*;
use polyrat_core::lrs::Lrs;
use polyrat_core::ratmath::{int, Rational};
use proptest::collection::vec;
use proptest::prelude::*;

fn lrs_up_to(max_order: usize) -> impl Strategy<Value = Lrs> {
    (0usize..=max_order).prop_flat_map(|k| (vec(rational(), k), vec(rational(), k)))
        .prop_map(|(a, u)| Lrs::new(a, u).unwrap())
}

fn lrs() -> impl Strategy<Value = Lrs> {
    lrs_up_to(5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn series_expands_to_the_terms(l in lrs()) {
        prop_assert_eq!(l.to_series().expand(50), l.terms(50));
    }

    #[test]
    fn series_round_trip_is_stable(l in lrs()) {
        let f = l.to_series();
        let back = Lrs::from_series(&f);
        prop_assert_eq!(back.terms(50), l.terms(50));
        prop_assert_eq!(back.to_series(), f);
    }

    #[test]
    fn padding_keeps_the_verdict(l in lrs_up_to(4), c in rational()) {
        // multiplying the characteristic polynomial by (x - c)
        let k = l.order();
        let a = l.coeffs();
        let mut padded = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let hi = if i < k { a[i].clone() } else { int(0) };
            let lo = if i == 0 { int(1) } else { -a[i - 1].clone() };
            padded.push(hi + &c * lo);
        }
        let p = Lrs::new(padded, l.terms(k + 1)).unwrap();
        prop_assert_eq!(p.terms(40), l.terms(40));
        prop_assert_eq!(p.classify_polyrat(None).is_polyrat, l.classify_polyrat(None).is_polyrat);
    }

    #[test]
    fn expressions_stay_in_the_fragment(l in lrs_up_to(4)) {
        if l.classify_polyrat(None).is_polyrat {
            let e = l.to_expr(None).unwrap();
            prop_assert!(e.is_polyrat());
            let t: Vec<Rational> = e.eval(40).unwrap();
            prop_assert_eq!(t, l.terms(40));
        } else {
            prop_assert!(l.to_expr(None).is_err());
        }
    }
}
