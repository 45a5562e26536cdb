//! Weighted automata over the rationals on a one-letter alphabet.
//!
//! An automaton `(Q, M, I, F)` denotes the sequence `n -> I^t M^n F`.
//! Transitions are the nonzero entries of `M`; the ambiguity analysis
//! works on that support graph.

mod ambiguity;
mod chain;
mod compile;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{Matrix, Rational, RationalFunction};

pub use ambiguity::{Ambiguity, AmbiguityReport, Witness};
pub use chain::{chained_loops_series, ChainedLoop, DEFAULT_CHAIN_CAP};
pub use compile::compile_expr_to_wa;

/// Default cap on the number of runs enumerated by [`WeightedAutomaton::eval_runs`].
pub const DEFAULT_RUN_CAP: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedAutomaton {
    m: Matrix,
    initial: Vec<Rational>,
    finals: Vec<Rational>,
}

impl WeightedAutomaton {
    pub fn new(m: Matrix, initial: Vec<Rational>, finals: Vec<Rational>) -> Result<Self> {
        let n = initial.len();
        if m.rows() != n || m.cols() != n || finals.len() != n {
            return Err(Error::invalid(format!(
                "inconsistent dimensions: M is {}x{}, I has {}, F has {}",
                m.rows(),
                m.cols(),
                n,
                finals.len()
            )));
        }
        Ok(WeightedAutomaton { m, initial, finals })
    }

    /// The automaton with no states, denoting the zero sequence.
    pub fn empty() -> Self {
        WeightedAutomaton {
            m: Matrix::zeros(0, 0),
            initial: vec![],
            finals: vec![],
        }
    }

    /// Builds an automaton from sparse weight lists; repeated entries add up.
    pub fn from_parts(
        states: usize,
        initial: &[(usize, Rational)],
        finals: &[(usize, Rational)],
        transitions: &[(usize, usize, Rational)],
    ) -> Result<Self> {
        let check = |q: usize| {
            if q < states {
                Ok(())
            } else {
                Err(Error::invalid(format!("state {q} out of range 0..{states}")))
            }
        };
        let mut m = Matrix::zeros(states, states);
        let mut i = vec![Rational::zero(); states];
        let mut f = vec![Rational::zero(); states];
        for (q, w) in initial {
            check(*q)?;
            i[*q] += w;
        }
        for (q, w) in finals {
            check(*q)?;
            f[*q] += w;
        }
        for (p, q, w) in transitions {
            check(*p)?;
            check(*q)?;
            let v = m.get(*p, *q) + w;
            m.set(*p, *q, v);
        }
        Ok(WeightedAutomaton {
            m,
            initial: i,
            finals: f,
        })
    }

    pub fn n_states(&self) -> usize {
        self.initial.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn initial(&self) -> &[Rational] {
        &self.initial
    }

    pub fn finals(&self) -> &[Rational] {
        &self.finals
    }

    pub fn weight(&self, p: usize, q: usize) -> &Rational {
        self.m.get(p, q)
    }

    /// Nonzero transitions `(p, q, M(p, q))`, row by row.
    pub fn transitions(&self) -> Vec<(usize, usize, Rational)> {
        let n = self.n_states();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let w = self.m.get(p, q);
                if !w.is_zero() {
                    out.push((p, q, w.clone()));
                }
            }
        }
        out
    }

    /// Successors in the support graph.
    pub fn successors(&self, p: usize) -> Vec<usize> {
        (0..self.n_states())
            .filter(|&q| !self.m.get(p, q).is_zero())
            .collect()
    }

    pub fn initial_states(&self) -> Vec<usize> {
        (0..self.n_states())
            .filter(|&q| !self.initial[q].is_zero())
            .collect()
    }

    pub fn final_states(&self) -> Vec<usize> {
        (0..self.n_states())
            .filter(|&q| !self.finals[q].is_zero())
            .collect()
    }

    /// `I^t M^n F`.
    pub fn eval_matrix(&self, n: usize) -> Rational {
        let mut v = self.initial.clone();
        for _ in 0..n {
            v = self.m.vec_mul(&v);
        }
        dot(&v, &self.finals)
    }

    /// `[eval_matrix(0), ..., eval_matrix(n - 1)]`, sharing the vector iteration.
    pub fn terms(&self, n: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(n);
        let mut v = self.initial.clone();
        for i in 0..n {
            if i > 0 {
                v = self.m.vec_mul(&v);
            }
            out.push(dot(&v, &self.finals));
        }
        out
    }

    /// Sum of the weights of all accepting runs of length `n`, by explicit
    /// enumeration. Fails once more than `cap` runs have been visited.
    pub fn eval_runs(&self, n: usize, cap: usize) -> Result<Rational> {
        let size = self.n_states();
        let succ: Vec<Vec<usize>> = (0..size).map(|p| self.successors(p)).collect();
        // live[r][q]: some final state is reachable from q in exactly r steps
        let mut live = vec![vec![false; size]; n + 1];
        for q in 0..size {
            live[0][q] = !self.finals[q].is_zero();
        }
        for r in 1..=n {
            for q in 0..size {
                live[r][q] = succ[q].iter().any(|&s| live[r - 1][s]);
            }
        }
        let mut total = Rational::zero();
        let mut visited = 0usize;
        let mut stack: Vec<(usize, usize, Rational)> = self
            .initial_states()
            .into_iter()
            .filter(|&q| live[n][q])
            .map(|q| (q, 0, self.initial[q].clone()))
            .collect();
        while let Some((q, depth, w)) = stack.pop() {
            if depth == n {
                visited += 1;
                if visited > cap {
                    return Err(Error::BudgetExceeded { what: "runs", cap });
                }
                total += w * &self.finals[q];
                continue;
            }
            for &s in &succ[q] {
                if live[n - depth - 1][s] {
                    stack.push((s, depth + 1, &w * self.m.get(q, s)));
                }
            }
        }
        Ok(total)
    }

    /// Number of accepting runs of each length `0..n` in the support graph.
    pub fn count_runs_upto(&self, n: usize) -> Vec<BigUint> {
        let size = self.n_states();
        let succ: Vec<Vec<usize>> = (0..size).map(|p| self.successors(p)).collect();
        let finals = self.final_states();
        let mut cnt: Vec<BigUint> = (0..size)
            .map(|q| {
                if self.initial[q].is_zero() {
                    BigUint::zero()
                } else {
                    BigUint::one()
                }
            })
            .collect();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                let mut next = vec![BigUint::zero(); size];
                for p in 0..size {
                    if cnt[p].is_zero() {
                        continue;
                    }
                    for &q in &succ[p] {
                        next[q] += &cnt[p];
                    }
                }
                cnt = next;
            }
            out.push(finals.iter().map(|&q| &cnt[q]).sum());
        }
        out
    }

    /// Number of accepting runs of length `n`.
    pub fn count_runs(&self, n: usize) -> BigUint {
        self.count_runs_upto(n + 1).pop().expect("n + 1 >= 1 entries")
    }

    /// Restriction to the states lying on some initial-to-final path.
    pub fn trim(&self) -> WeightedAutomaton {
        let keep = self.useful_states();
        if keep.len() == self.n_states() {
            return self.clone();
        }
        self.restrict(&keep)
    }

    pub(crate) fn useful_states(&self) -> Vec<usize> {
        let size = self.n_states();
        let mut fwd = vec![false; size];
        let mut stack = self.initial_states();
        for &q in &stack {
            fwd[q] = true;
        }
        while let Some(p) = stack.pop() {
            for q in self.successors(p) {
                if !fwd[q] {
                    fwd[q] = true;
                    stack.push(q);
                }
            }
        }
        let mut bwd = vec![false; size];
        let mut stack = self.final_states();
        for &q in &stack {
            bwd[q] = true;
        }
        while let Some(q) = stack.pop() {
            for p in 0..size {
                if !bwd[p] && !self.m.get(p, q).is_zero() {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..size).filter(|&q| fwd[q] && bwd[q]).collect()
    }

    /// Sub-automaton on `states`, renumbered in the given order.
    pub(crate) fn restrict(&self, states: &[usize]) -> WeightedAutomaton {
        let k = states.len();
        let mut m = Matrix::zeros(k, k);
        for (i, &p) in states.iter().enumerate() {
            for (j, &q) in states.iter().enumerate() {
                m.set(i, j, self.m.get(p, q).clone());
            }
        }
        WeightedAutomaton {
            m,
            initial: states.iter().map(|&q| self.initial[q].clone()).collect(),
            finals: states.iter().map(|&q| self.finals[q].clone()).collect(),
        }
    }

    /// Disjoint union; denotes the sum.
    pub fn union(&self, other: &WeightedAutomaton) -> WeightedAutomaton {
        let (a, b) = (self.n_states(), other.n_states());
        let mut m = Matrix::zeros(a + b, a + b);
        for (p, q, w) in self.transitions() {
            m.set(p, q, w);
        }
        for (p, q, w) in other.transitions() {
            m.set(a + p, a + q, w);
        }
        WeightedAutomaton {
            m,
            initial: [self.initial.clone(), other.initial.clone()].concat(),
            finals: [self.finals.clone(), other.finals.clone()].concat(),
        }
    }

    /// Tensor product; denotes the Hadamard product. State `(p, q)` is `p * |B| + q`.
    pub fn product(&self, other: &WeightedAutomaton) -> WeightedAutomaton {
        WeightedAutomaton {
            m: self.m.kron(&other.m),
            initial: kron_vec(&self.initial, &other.initial),
            finals: kron_vec(&self.finals, &other.finals),
        }
    }

    /// Denotes `a` followed by the sequence of `self`: a fresh initial state
    /// with final weight `a` and out-edges carrying the old initial weights.
    pub fn shift(&self, a: &Rational) -> WeightedAutomaton {
        let n = self.n_states();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for (p, q, w) in self.transitions() {
            m.set(p + 1, q + 1, w);
        }
        for (q, w) in self.initial.iter().enumerate() {
            m.set(0, q + 1, w.clone());
        }
        let mut initial = vec![Rational::zero(); n + 1];
        initial[0] = Rational::one();
        let mut finals = vec![a.clone()];
        finals.extend(self.finals.iter().cloned());
        WeightedAutomaton { m, initial, finals }
    }

    /// `A[k]`: separates consecutive terms by `k - 1` zeros. State `(q, i)`
    /// is `q * k + i`; phase `0` carries the original weights.
    pub fn stretch(&self, k: usize) -> WeightedAutomaton {
        assert!(k >= 1, "stretch factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let n = self.n_states();
        let mut m = Matrix::zeros(n * k, n * k);
        for q in 0..n {
            for i in 0..k - 1 {
                m.set(q * k + i, q * k + i + 1, Rational::one());
            }
        }
        for (p, q, w) in self.transitions() {
            m.set(p * k + k - 1, q * k, w);
        }
        let lift = |v: &[Rational]| {
            let mut out = vec![Rational::zero(); n * k];
            for (q, w) in v.iter().enumerate() {
                out[q * k] = w.clone();
            }
            out
        };
        WeightedAutomaton {
            m,
            initial: lift(&self.initial),
            finals: lift(&self.finals),
        }
    }

    /// Denotes the interleaving of the children: stretch each by `k`, shift
    /// child `i` by `i` zeros, and take the union.
    pub fn shuffle(children: &[WeightedAutomaton]) -> Result<WeightedAutomaton> {
        if children.is_empty() {
            return Err(Error::Arity("shuffle needs at least one child".into()));
        }
        let k = children.len();
        let zero = Rational::zero();
        Ok(children
            .iter()
            .enumerate()
            .map(|(i, c)| (0..i).fold(c.stretch(k), |acc, _| acc.shift(&zero)))
            .reduce(|acc, c| acc.union(&c))
            .expect("nonempty"))
    }

    /// The rational generating function, recovered exactly from `2 |Q|`
    /// terms: the sequence satisfies a recurrence of order at most `|Q|`
    /// (Cayley–Hamilton), so Berlekamp–Massey on twice that length is exact.
    pub fn series(&self) -> RationalFunction {
        RationalFunction::from_terms(&self.terms(2 * self.n_states()))
    }

    /// Whether both automata denote the same sequence. The difference has a
    /// recurrence of order at most `|Q_A| + |Q_B|`, so that many equal
    /// leading terms decide equality.
    pub fn equiv(&self, other: &WeightedAutomaton) -> bool {
        let n = self.n_states() + other.n_states();
        self.terms(n) == other.terms(n)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn kron_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}
