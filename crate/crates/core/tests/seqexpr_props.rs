mod common;

use common::strategies::*;
use polyrat_core::lrs::classify_series;
use polyrat_core::ratmath::{BinomialFactor, RationalFunction};
use polyrat_core::seqexpr::{binomial_term_expr, parse, Fragment, SeqExpr};
use polyrat_core::wa::compile_expr_to_wa;
use proptest::collection::vec;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_then_parsing_is_identity(e in rat_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn shuffle_interleaves(children in vec(expr(), 1..=3), m in 0usize..8) {
        let k = children.len();
        let whole = SeqExpr::shuffle(children.clone()).unwrap().eval(k * m).unwrap();
        for (j, c) in children.iter().enumerate() {
            let part = c.eval(m).unwrap();
            for i in 0..m {
                prop_assert_eq!(&whole[k * i + j], &part[i]);
            }
        }
    }

    #[test]
    fn binomial_terms_match_their_series(
        r in polynomial(3),
        f in binomial_factor(),
        k in 1usize..=3,
    ) {
        let e = binomial_term_expr(&r, &f.lambda, f.ell, k).unwrap();
        let den = BinomialFactor::new(f.lambda.clone(), f.ell, k).power();
        let series = RationalFunction::new(r, den).unwrap();
        prop_assert_eq!(e.eval(25).unwrap(), series.expand(25));
        prop_assert!(e.is_polyrat());
    }

    #[test]
    fn polyrat_expressions_have_polyrat_series(e in expr()) {
        prop_assert!(e.fragments().contains(&Fragment::PolyRat));
        let a = compile_expr_to_wa(&e).unwrap();
        prop_assert!(classify_series(&a.series(), None).is_polyrat);
    }

    #[test]
    fn fragments_are_nested(e in rat_expr()) {
        let f = e.fragments();
        prop_assert!(f.contains(&Fragment::Rat));
        if f.contains(&Fragment::PolyRat) {
            prop_assert!(e.is_polyrat());
        }
    }
}
