use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::ambiguity::SccInfo;
use super::{Ambiguity, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::ratmath::{binomial, Matrix, Polynomial, Rational, RationalFunction};
use crate::seqexpr::SeqExpr;

/// Default cap on the number of chained loops a decomposition may produce.
pub const DEFAULT_CHAIN_CAP: usize = 100_000;

/// A simple path `q_0 -> ... -> q_{k-1}` whose states each carry at most one
/// cycle, flattened to `(product of cycle weights, cycle length)`.
///
/// The final weight of `q_{k-1}` is folded into `initial_weight`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainedLoop {
    pub path_states: Vec<usize>,
    pub path_weights: Vec<Rational>,
    pub loops: Vec<Option<(Rational, usize)>>,
    pub initial_weight: Rational,
}

impl ChainedLoop {
    /// `initial_weight * prod(w_i x) * prod 1/(1 - lambda_j x^ell_j)`.
    pub fn series(&self) -> RationalFunction {
        let w = self
            .path_weights
            .iter()
            .fold(self.initial_weight.clone(), |acc, x| acc * x);
        let num = Polynomial::monomial(w, self.path_weights.len());
        let den = self
            .loops
            .iter()
            .flatten()
            .fold(Polynomial::one(), |acc, (l, ell)| &acc * &binomial(l, *ell));
        RationalFunction::new(num, den).expect("binomials have constant term 1")
    }

    /// The chained loop as an automaton in its own right: each looped
    /// state becomes a cycle of `ell` states whose first edge carries `lambda`.
    pub fn to_automaton(&self) -> WeightedAutomaton {
        let mut entry = Vec::with_capacity(self.path_states.len());
        let mut size = 0usize;
        for l in &self.loops {
            entry.push(size);
            size += l.as_ref().map_or(1, |(_, ell)| *ell);
        }
        let mut m = Matrix::zeros(size, size);
        for (i, l) in self.loops.iter().enumerate() {
            if let Some((lambda, ell)) = l {
                let e = entry[i];
                for j in 0..*ell {
                    let w = if j == 0 { lambda.clone() } else { Rational::one() };
                    m.set(e + j, e + (j + 1) % ell, w);
                }
            }
        }
        for (i, w) in self.path_weights.iter().enumerate() {
            m.set(entry[i], entry[i + 1], w.clone());
        }
        let mut initial = vec![Rational::zero(); size];
        let mut finals = vec![Rational::zero(); size];
        if size > 0 {
            initial[0] = self.initial_weight.clone();
            finals[*entry.last().expect("nonempty")] = Rational::one();
        }
        WeightedAutomaton::new(m, initial, finals).expect("consistent dimensions")
    }

    /// Number of loops on the path.
    pub fn loop_count(&self) -> usize {
        self.loops.iter().flatten().count()
    }
}

impl WeightedAutomaton {
    /// Splits a non-exponentially ambiguous automaton into chained loops
    /// whose values sum to the automaton's value.
    ///
    /// Every accepting run enters each cycle it uses at a unique state,
    /// winds around some number of times, then leaves along part of the
    /// cycle; so runs correspond one-to-one to simple paths paired with the
    /// winding counts at the states where the path enters a cycle.
    pub fn decompose_chained_loops(&self, cap: usize) -> Result<Vec<ChainedLoop>> {
        let info = SccInfo::new(self);
        if let Some(q) = info.two_cycle_state() {
            return Err(Error::ExponentialAmbiguity {
                state: info.states[q],
            });
        }
        let t = &info.trimmed;
        let n = t.n_states();
        let cycle: Vec<Option<(Rational, usize)>> = (0..n)
            .map(|q| {
                if !info.is_cycle(info.comp[q]) {
                    return None;
                }
                let c = info.cycle_from(q);
                let lambda = (0..c.len())
                    .map(|i| t.weight(c[i], c[(i + 1) % c.len()]).clone())
                    .fold(Rational::one(), |a, b| a * b);
                Some((lambda, c.len()))
            })
            .collect();
        let succ: Vec<Vec<usize>> = (0..n).map(|p| t.successors(p)).collect();

        let mut out = Vec::new();
        let mut on_path = vec![false; n];
        for q0 in t.initial_states() {
            let mut path = vec![q0];
            on_path[q0] = true;
            // iterative DFS: stack of next-successor indices
            let mut next_idx = vec![0usize];
            loop {
                let top = *path.last().expect("nonempty");
                if next_idx.len() == path.len() && next_idx[path.len() - 1] == 0 {
                    // first visit of this path: emit if it ends in a final state
                    if !t.finals()[top].is_zero() {
                        if out.len() >= cap {
                            return Err(Error::BudgetExceeded {
                                what: "chained loops",
                                cap,
                            });
                        }
                        out.push(self.chained_loop(&info, &cycle, &path));
                    }
                }
                let i = next_idx.last_mut().expect("nonempty");
                if *i < succ[top].len() {
                    let s = succ[top][*i];
                    *i += 1;
                    if !on_path[s] {
                        on_path[s] = true;
                        path.push(s);
                        next_idx.push(0);
                    }
                    continue;
                }
                on_path[top] = false;
                path.pop();
                next_idx.pop();
                if path.is_empty() {
                    break;
                }
            }
        }
        Ok(out)
    }

    fn chained_loop(
        &self,
        info: &SccInfo,
        cycle: &[Option<(Rational, usize)>],
        path: &[usize],
    ) -> ChainedLoop {
        let t = &info.trimmed;
        let loops = path
            .iter()
            .enumerate()
            .map(|(i, &q)| {
                let entered = i == 0 || info.comp[path[i - 1]] != info.comp[q];
                if entered {
                    cycle[q].clone()
                } else {
                    None
                }
            })
            .collect();
        let last = *path.last().expect("nonempty");
        ChainedLoop {
            path_states: path.iter().map(|&q| info.states[q]).collect(),
            path_weights: path
                .windows(2)
                .map(|w| t.weight(w[0], w[1]).clone())
                .collect(),
            loops,
            initial_weight: &t.initial()[path[0]] * &t.finals()[last],
        }
    }

    /// Expression for a deterministic automaton: the run from the unique
    /// initial state traces a lasso, giving shifts over a shuffle of
    /// geometric sequences sharing the loop product as ratio.
    pub fn lasso_to_expr(&self) -> Result<SeqExpr> {
        let class = self.classify_ambiguity().class;
        if class != Ambiguity::Deterministic {
            return Err(Error::ClassMismatch {
                expected: Ambiguity::Deterministic.label(),
                found: class.label(),
            });
        }
        let t = self.trim();
        let Some(&q0) = t.initial_states().first() else {
            return Ok(SeqExpr::zero());
        };
        // walk until the path ends or repeats
        let mut seen = vec![usize::MAX; t.n_states()];
        let mut states = vec![q0];
        let mut weights = vec![t.initial()[q0].clone()];
        seen[q0] = 0;
        let loop_start = loop {
            let cur = *states.last().expect("nonempty");
            let Some(&s) = t.successors(cur).first() else {
                break None;
            };
            if seen[s] != usize::MAX {
                let w = weights.last().expect("nonempty") * t.weight(cur, s);
                break Some((seen[s], w));
            }
            let w = weights.last().expect("nonempty") * t.weight(cur, s);
            seen[s] = states.len();
            states.push(s);
            weights.push(w);
        };
        let value = |i: usize| &weights[i] * &t.finals()[states[i]];
        match loop_start {
            None => {
                let vals: Vec<Rational> = (0..states.len()).map(value).collect();
                Ok(SeqExpr::shift_all(&vals, SeqExpr::zero()))
            }
            Some((m, back)) => {
                // weight of one full turn around the cycle
                let lambda = back / &weights[m];
                let head: Vec<Rational> = (0..m).map(value).collect();
                let mut geos: Vec<SeqExpr> = (m..states.len())
                    .map(|i| SeqExpr::geo(value(i), lambda.clone()))
                    .collect();
                let body = if geos.len() == 1 {
                    geos.pop().expect("one")
                } else {
                    SeqExpr::Shuffle(geos)
                };
                Ok(SeqExpr::shift_all(&head, body))
            }
        }
    }

    /// Expression for a finitely ambiguous automaton: the sum over its
    /// chained loops, each of which has at most one loop.
    pub fn finwa_to_expr(&self) -> Result<SeqExpr> {
        let class = self.classify_ambiguity().class;
        if !matches!(
            class,
            Ambiguity::Deterministic | Ambiguity::FinitelyAmbiguous(_)
        ) {
            return Err(Error::ClassMismatch {
                expected: "finitely ambiguous".into(),
                found: class.label(),
            });
        }
        let chains = self.decompose_chained_loops(DEFAULT_CHAIN_CAP)?;
        Ok(SeqExpr::sum_all(chains.iter().map(lasso_chain_expr)))
    }
}

/// A chained loop with at most one loop denotes `c x^j / (1 - lambda x^ell)`.
fn lasso_chain_expr(c: &ChainedLoop) -> SeqExpr {
    let coef = c
        .path_weights
        .iter()
        .fold(c.initial_weight.clone(), |acc, w| acc * w);
    let j = c.path_weights.len();
    let zeros = vec![Rational::zero(); j];
    let body = match c.loops.iter().flatten().next() {
        None => SeqExpr::shift(coef, SeqExpr::zero()),
        Some((lambda, ell)) => {
            let mut children = vec![SeqExpr::geo(coef, lambda.clone())];
            children.extend((1..*ell).map(|_| SeqExpr::geo(Rational::zero(), lambda.clone())));
            if children.len() == 1 {
                children.pop().expect("one")
            } else {
                SeqExpr::Shuffle(children)
            }
        }
    };
    SeqExpr::shift_all(&zeros, body)
}

/// Sum of the chained-loop series, taken over the common multiple in which
/// every binomial appears with its largest multiplicity, then reduced once.
pub fn chained_loops_series(chains: &[ChainedLoop]) -> RationalFunction {
    let counts = |c: &ChainedLoop| {
        let mut m: BTreeMap<(Rational, usize), usize> = BTreeMap::new();
        for (l, ell) in c.loops.iter().flatten() {
            *m.entry((l.clone(), *ell)).or_default() += 1;
        }
        m
    };
    let per_chain: Vec<_> = chains.iter().map(counts).collect();
    let mut common: BTreeMap<(Rational, usize), usize> = BTreeMap::new();
    for m in &per_chain {
        for (key, &k) in m {
            let e = common.entry(key.clone()).or_default();
            *e = (*e).max(k);
        }
    }
    let mut num = Polynomial::zero();
    for (c, m) in chains.iter().zip(&per_chain) {
        let w = c
            .path_weights
            .iter()
            .fold(c.initial_weight.clone(), |acc, x| acc * x);
        let cofactor = common.iter().fold(Polynomial::one(), |acc, ((l, ell), &k)| {
            let have = m.get(&(l.clone(), *ell)).copied().unwrap_or(0);
            &acc * &binomial(l, *ell).pow(k - have)
        });
        num = &num + &cofactor.shift_up(c.path_weights.len()).scale(&w);
    }
    let den = common
        .iter()
        .fold(Polynomial::one(), |acc, ((l, ell), &k)| &acc * &binomial(l, *ell).pow(k));
    RationalFunction::new(num, den).expect("binomials have constant term 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::int;
    use crate::seqexpr::Fragment;
    use crate::wa::tests::{fibonacci, even_threes, fives, threes_then_fives};

    #[test]
    fn chained_loop_series() {
        let s = |a: &WeightedAutomaton| {
            let cs = a.decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
            assert_eq!(cs.len(), 1);
            cs[0].series().to_string()
        };
        assert_eq!(s(&even_threes()), "2/(1 - 3x^2)");
        assert_eq!(s(&fives()), "5/(1 - 5x)");
        assert_eq!(s(&threes_then_fives()), "10x/(1 - 5x - 3x^2 + 15x^3)");
        let cs = threes_then_fives().decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
        assert_eq!(cs[0].path_states, vec![0, 2]);
        assert_eq!(cs[0].loop_count(), 2);
    }

    #[test]
    fn summed_chains_match_the_automaton() {
        for a in [fives().union(&even_threes()), threes_then_fives().union(&fives()), fives().union(&fives())] {
            let cs = a.decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
            let one_by_one = cs.iter().fold(RationalFunction::zero(), |acc, c| &acc + &c.series());
            assert_eq!(chained_loops_series(&cs), a.series());
            assert_eq!(one_by_one, a.series());
        }
        assert_eq!(chained_loops_series(&[]), RationalFunction::zero());
    }

    #[test]
    fn single_loop_and_loop_free() {
        let g = WeightedAutomaton::from_parts(1, &[(0, int(1))], &[(0, int(1))], &[(0, 0, int(4))]).unwrap();
        let cs = g.decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].path_states.len(), 1);
        let p = WeightedAutomaton::from_parts(1, &[(0, int(7))], &[(0, int(1))], &[]).unwrap();
        let cs = p.decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
        assert_eq!(cs[0].series(), RationalFunction::from_polynomial(Polynomial::constant(int(7))));
    }

    #[test]
    fn decomposition_sums_to_automaton() {
        // path leaving a 3-cycle from a state other than the entry
        let a = WeightedAutomaton::from_parts(
            5,
            &[(0, int(1)), (2, int(-1))],
            &[(1, int(2)), (4, int(1))],
            &[
                (0, 1, int(2)),
                (1, 2, int(3)),
                (2, 0, int(1)),
                (2, 3, int(5)),
                (3, 4, int(1)),
                (4, 4, int(-2)),
            ],
        )
        .unwrap();
        let cs = a.decompose_chained_loops(DEFAULT_CHAIN_CAP).unwrap();
        let total = cs
            .iter()
            .fold(RationalFunction::zero(), |acc, c| &acc + &c.series());
        assert_eq!(total.expand(30), a.terms(30));
        for c in &cs {
            assert_eq!(c.to_automaton().terms(20), c.series().expand(20));
        }
    }

    #[test]
    fn exponential_automaton_is_rejected() {
        assert!(matches!(
            fibonacci().decompose_chained_loops(DEFAULT_CHAIN_CAP),
            Err(Error::ExponentialAmbiguity { state: 0 })
        ));
    }

    #[test]
    fn chain_cap_is_enforced() {
        assert!(matches!(
            threes_then_fives().union(&threes_then_fives()).decompose_chained_loops(1),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn lasso_examples() {
        let g = WeightedAutomaton::from_parts(1, &[(0, int(3))], &[(0, int(1))], &[(0, 0, int(2))]).unwrap();
        assert_eq!(g.lasso_to_expr().unwrap(), SeqExpr::geo(int(3), int(2)));
        let c = WeightedAutomaton::from_parts(2, &[(0, int(1))], &[(0, int(1))], &[(0, 1, int(2)), (1, 0, int(3))])
            .unwrap();
        let e = c.lasso_to_expr().unwrap();
        assert_eq!(
            e.eval(6).unwrap(),
            [1, 0, 6, 0, 36, 0].map(int).to_vec()
        );
        assert!(e.fragments().contains(&Fragment::Det(int(6))));
        let e = even_threes().lasso_to_expr().unwrap();
        assert_eq!(e.eval(10).unwrap(), even_threes().terms(10));
        assert!(matches!(
            threes_then_fives().lasso_to_expr(),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn lasso_with_tail() {
        let a = WeightedAutomaton::from_parts(
            4,
            &[(0, int(2))],
            &[(1, int(1)), (3, int(5))],
            &[(0, 1, int(3)), (1, 2, int(1)), (2, 3, int(-1)), (3, 1, int(2))],
        )
        .unwrap();
        let e = a.lasso_to_expr().unwrap();
        assert_eq!(e.eval(20).unwrap(), a.terms(20));
    }

    #[test]
    fn union_of_lassos() {
        let a = fives().union(&even_threes());
        let e = a.finwa_to_expr().unwrap();
        assert!(matches!(e, SeqExpr::Sum(..)));
        if let SeqExpr::Sum(l, r) = &e {
            assert!(l.fragments().iter().any(|f| matches!(f, Fragment::Det(_))));
            assert!(r.fragments().iter().any(|f| matches!(f, Fragment::Det(_))));
        }
        assert_eq!(e.eval(20).unwrap(), a.terms(20));
        assert!(matches!(
            threes_then_fives().finwa_to_expr(),
            Err(Error::ClassMismatch { .. })
        ));
    }
}
