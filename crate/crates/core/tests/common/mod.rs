//! Generators and fixtures shared by the integration tests.
#![allow(dead_code)]

use polyrat_core::cra::{parse_register_expr, Cra};
use polyrat_core::ratmath::{int, rat, Rational};
use polyrat_core::seqexpr::SeqExpr;
use polyrat_core::wa::WeightedAutomaton;
use rand::rngs::StdRng;
use rand::Rng;

/// `p/q` with `|p| <= 5` and `1 <= q <= 5`.
pub fn small_rational(rng: &mut StdRng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=5))
}

pub fn nonzero_rational(rng: &mut StdRng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

fn atom(rng: &mut StdRng) -> SeqExpr {
    match rng.gen_range(0..3) {
        0 => SeqExpr::arith(small_rational(rng), small_rational(rng)),
        1 => SeqExpr::geo(small_rational(rng), small_rational(rng)),
        _ => {
            let len = rng.gen_range(0..=3);
            SeqExpr::fin((0..len).map(|_| small_rational(rng)).collect())
        }
    }
}

/// A random expression of the poly-rational fragment, of depth at most `depth`.
pub fn polyrat_expr(rng: &mut StdRng, depth: usize) -> SeqExpr {
    if depth <= 1 || rng.gen_bool(0.3) {
        return atom(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..4) {
        0 => SeqExpr::sum(polyrat_expr(rng, d), polyrat_expr(rng, d)),
        1 => SeqExpr::hadamard(polyrat_expr(rng, d), polyrat_expr(rng, d)),
        2 => SeqExpr::shift(small_rational(rng), polyrat_expr(rng, d)),
        _ => {
            let k = rng.gen_range(1..=3);
            SeqExpr::shuffle((0..k).map(|_| polyrat_expr(rng, d)).collect()).unwrap()
        }
    }
}

/// Random automaton with up to `max_states` states and sparse rational weights.
pub fn random_automaton(rng: &mut StdRng, max_states: usize) -> WeightedAutomaton {
    let n = rng.gen_range(1..=max_states);
    let pick = |rng: &mut StdRng, p: f64| -> Option<Rational> {
        rng.gen_bool(p).then(|| nonzero_rational(rng))
    };
    let mut initial = Vec::new();
    let mut finals = Vec::new();
    let mut transitions = Vec::new();
    for q in 0..n {
        if let Some(w) = pick(rng, 0.4) {
            initial.push((q, w));
        }
        if let Some(w) = pick(rng, 0.4) {
            finals.push((q, w));
        }
        for r in 0..n {
            if let Some(w) = pick(rng, 0.35) {
                transitions.push((q, r, w));
            }
        }
    }
    WeightedAutomaton::from_parts(n, &initial, &finals, &transitions).unwrap()
}

pub fn fibonacci_automaton() -> WeightedAutomaton {
    WeightedAutomaton::from_parts(
        2,
        &[(0, int(1))],
        &[(1, int(1))],
        &[(0, 0, int(1)), (0, 1, int(1)), (1, 0, int(1))],
    )
    .unwrap()
}

pub fn even_threes() -> WeightedAutomaton {
    WeightedAutomaton::from_parts(2, &[(0, int(2))], &[(0, int(1))], &[(0, 1, int(1)), (1, 0, int(3))])
        .unwrap()
}

pub fn fives() -> WeightedAutomaton {
    WeightedAutomaton::from_parts(1, &[(0, int(5))], &[(0, int(1))], &[(0, 0, int(5))]).unwrap()
}

/// `A1` followed by `A2`: the final weight of `A1` feeds the initial edge of `A2`.
pub fn threes_then_fives() -> WeightedAutomaton {
    WeightedAutomaton::from_parts(
        3,
        &[(0, int(2))],
        &[(2, int(1))],
        &[(0, 1, int(1)), (1, 0, int(3)), (0, 2, int(5)), (2, 2, int(5))],
    )
    .unwrap()
}

/// Two registers started at 0 and 1, `x0 := x1`, `x1 := x0 + x1`, output `x0`.
pub fn fib_machine() -> Cra {
    let names = vec!["x0".to_string(), "x1".to_string()];
    let e = |s: &str| parse_register_expr(s, &names).unwrap();
    Cra::new(
        names.clone(),
        vec![(0, vec![e("x1"), e("x0 + x1")])],
        0,
        vec![int(0), int(1)],
        vec![Some(e("x0"))],
    )
    .unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub mod strategies {
    use super::*;
    use polyrat_core::ratmath::{BinomialFactor, Polynomial};
    use proptest::collection::vec;
    use proptest::prelude::*;

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-5i64..=5, 1i64..=5).prop_map(|(p, q)| rat(p, q))
    }

    pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
        rational().prop_filter("nonzero", |r| *r != int(0))
    }

    pub fn polynomial(max_len: usize) -> impl Strategy<Value = Polynomial> {
        vec(rational(), 0..=max_len).prop_map(Polynomial::new)
    }

    /// Polynomial with constant term 1.
    pub fn unit_polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
        vec(rational(), 0..=max_degree).prop_map(|mut v| {
            v.insert(0, int(1));
            Polynomial::new(v)
        })
    }

    pub fn binomial_factor() -> impl Strategy<Value = BinomialFactor> {
        (nonzero_rational(), 1usize..=3, 1usize..=2).prop_map(|(l, e, k)| BinomialFactor::new(l, e, k))
    }

    pub fn expr() -> impl Strategy<Value = SeqExpr> {
        let leaf = prop_oneof![
            (rational(), rational()).prop_map(|(a, b)| SeqExpr::arith(a, b)),
            (rational(), rational()).prop_map(|(a, l)| SeqExpr::geo(a, l)),
            vec(rational(), 0..=3).prop_map(SeqExpr::fin),
        ];
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| SeqExpr::sum(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| SeqExpr::hadamard(l, r)),
                (rational(), inner.clone()).prop_map(|(a, e)| SeqExpr::shift(a, e)),
                vec(inner, 1..=3).prop_map(|v| SeqExpr::shuffle(v).unwrap()),
            ]
        })
    }

    /// Expressions outside the automaton fragment as well.
    pub fn rat_expr() -> impl Strategy<Value = SeqExpr> {
        let leaf = prop_oneof![
            (rational(), rational()).prop_map(|(a, b)| SeqExpr::arith(a, b)),
            (rational(), rational()).prop_map(|(a, l)| SeqExpr::geo(a, l)),
            vec(rational(), 0..=3).prop_map(SeqExpr::fin),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| SeqExpr::sum(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| SeqExpr::hadamard(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| SeqExpr::cauchy(l, r)),
                inner.clone().prop_map(SeqExpr::star),
                (rational(), inner.clone()).prop_map(|(a, e)| SeqExpr::shift(a, e)),
                vec(inner, 1..=3).prop_map(|v| SeqExpr::shuffle(v).unwrap()),
            ]
        })
    }

    pub fn automaton(max_states: usize) -> impl Strategy<Value = WeightedAutomaton> {
        let weight = || prop_oneof![2 => Just(None), 1 => nonzero_rational().prop_map(Some)];
        (1..=max_states)
            .prop_flat_map(move |n| {
                (
                    Just(n),
                    vec(weight(), n),
                    vec(weight(), n),
                    vec(weight(), n * n),
                )
            })
            .prop_map(|(n, i, f, m)| {
                let pairs = |v: Vec<Option<Rational>>| -> Vec<(usize, Rational)> {
                    v.into_iter().enumerate().filter_map(|(q, w)| w.map(|w| (q, w))).collect()
                };
                let t: Vec<_> = m
                    .into_iter()
                    .enumerate()
                    .filter_map(|(k, w)| w.map(|w| (k / n, k % n, w)))
                    .collect();
                WeightedAutomaton::from_parts(n, &pairs(i), &pairs(f), &t).unwrap()
            })
    }
}
