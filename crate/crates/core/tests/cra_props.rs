mod common;

use common::strategies::*;
use polyrat_core::cra::{compile_expr_to_ccra, compose_substitutions, copyless_violation, RegisterExpr};
use polyrat_core::formats::{cra_from_json, cra_to_json};
use polyrat_core::ratmath::Rational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Every register is read at most once across the images.
fn copyless_substitution(rng: &mut StdRng, regs: usize) -> Vec<RegisterExpr> {
    let mut pool: Vec<usize> = (0..regs).collect();
    pool.shuffle(rng);
    let c = |rng: &mut StdRng| RegisterExpr::constant(Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=3).into()));
    (0..regs)
        .map(|_| {
            let take = rng.gen_range(0..=2).min(pool.len());
            let vars: Vec<RegisterExpr> = pool.drain(..take).map(RegisterExpr::var).collect();
            let mut e = c(rng);
            for v in vars {
                e = if rng.gen_bool(0.5) {
                    RegisterExpr::add(e, v)
                } else {
                    RegisterExpr::mul(e, v)
                };
            }
            e
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compiled_machines_round_trip(e in expr()) {
        let c = compile_expr_to_ccra(&e).unwrap();
        prop_assert!(c.check_copyless().copyless);
        prop_assert!(c.check_normal_form().is_ok());
        let reference = e.eval(40).unwrap();
        prop_assert_eq!(c.terms(40).unwrap(), reference.clone());
        let back = c.to_expr().unwrap();
        prop_assert!(back.is_polyrat());
        prop_assert_eq!(back.eval(40).unwrap(), reference);
        prop_assert_eq!(cra_from_json(&cra_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn loop_substitution_samples_the_run(e in expr()) {
        let c = compile_expr_to_ccra(&e).unwrap();
        let (states, tail) = c.lasso();
        let period = states.len() - tail;
        let start = c.run_substitution(c.initial_state(), tail);
        let mut v: Vec<Rational> = start.iter().map(|x| x.eval(c.nu0())).collect();
        let sigma = c.run_substitution(states[tail], period);
        let out = c.mu()[states[tail]].clone().unwrap();
        let terms = c.terms(tail + 6 * period + 1).unwrap();
        for j in 0..=6 {
            prop_assert_eq!(&out.eval(&v), &terms[tail + j * period]);
            v = sigma.iter().map(|x| x.eval(&v)).collect();
        }
    }

    #[test]
    fn composition_keeps_copylessness(seed in any::<u64>(), regs in 1usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s1 = copyless_substitution(&mut rng, regs);
        let s2 = copyless_substitution(&mut rng, regs);
        prop_assert!(copyless_violation(&s1).is_none());
        prop_assert!(copyless_violation(&s2).is_none());
        let s = compose_substitutions(&s1, &s2);
        prop_assert!(copyless_violation(&s).is_none());
        let v: Vec<Rational> = (0..regs).map(|i| Rational::from_integer((i as i64 + 2).into())).collect();
        let step1: Vec<Rational> = s1.iter().map(|x| x.eval(&v)).collect();
        let step2: Vec<Rational> = s2.iter().map(|x| x.eval(&step1)).collect();
        let direct: Vec<Rational> = s.iter().map(|x| x.eval(&v)).collect();
        prop_assert_eq!(direct, step2);
    }
}
