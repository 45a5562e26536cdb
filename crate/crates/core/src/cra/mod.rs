//! Cost-register automata on a one-letter alphabet.
//!
//! A machine is deterministic: each state has one successor and one
//! substitution updating every register. The value at `n` is the output
//! expression of the state reached after `n` steps, evaluated on the
//! register valuation at that point.

mod convert;
mod expr;

use crate::error::{Error, Result};
use crate::ratmath::Rational;

pub use convert::compile_expr_to_ccra;
pub use expr::{parse_register_expr, RegPoly, RegisterExpr};

/// One image per register.
pub type Substitution = Vec<RegisterExpr>;

/// Identity substitution on `n` registers.
pub fn identity_substitution(n: usize) -> Substitution {
    (0..n).map(RegisterExpr::Var).collect()
}

/// `s1` followed by `s2`: the image of `x` is `s2(x)` with every register
/// `y` replaced by `s1(y)`. Images that come out linear are reduced to the
/// canonical form `sum a_i x_i + b`; others keep their tree shape, which
/// preserves copylessness.
pub fn compose_substitutions(s1: &[RegisterExpr], s2: &[RegisterExpr]) -> Substitution {
    s2.iter()
        .map(|e| {
            let c = e.substitute(s1);
            let p = RegPoly::from_expr(&c);
            if p.degree() <= 1 {
                p.to_affine_expr()
            } else {
                c
            }
        })
        .collect()
}

/// First register used more than once across all images, if any.
pub fn copyless_violation(s: &[RegisterExpr]) -> Option<usize> {
    let mut counts = vec![0usize; s.len()];
    for e in s {
        e.count_vars(&mut counts);
    }
    counts.iter().position(|&c| c > 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cra {
    registers: Vec<String>,
    delta: Vec<(usize, Substitution)>,
    initial_state: usize,
    nu0: Vec<Rational>,
    mu: Vec<Option<RegisterExpr>>,
}

/// Outcome of the copyless check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CopylessReport {
    pub copyless: bool,
    /// `(state, register)` of the first register read twice.
    pub witness: Option<(usize, usize)>,
}

impl Cra {
    pub fn new(
        registers: Vec<String>,
        delta: Vec<(usize, Substitution)>,
        initial_state: usize,
        nu0: Vec<Rational>,
        mu: Vec<Option<RegisterExpr>>,
    ) -> Result<Self> {
        let states = delta.len();
        let r = registers.len();
        if states == 0 {
            return Err(Error::invalid("a machine needs at least one state"));
        }
        if initial_state >= states {
            return Err(Error::invalid(format!(
                "initial state {initial_state} out of range 0..{states}"
            )));
        }
        if nu0.len() != r {
            return Err(Error::invalid(format!(
                "initial valuation has {} entries for {r} registers",
                nu0.len()
            )));
        }
        if mu.len() != states {
            return Err(Error::invalid(format!(
                "output map has {} entries for {states} states",
                mu.len()
            )));
        }
        for (i, n) in registers.iter().enumerate() {
            if registers[..i].contains(n) {
                return Err(Error::invalid(format!("duplicate register name '{n}'")));
            }
        }
        let in_range = |e: &RegisterExpr| e.max_var().is_none_or(|v| v < r);
        for (q, (next, s)) in delta.iter().enumerate() {
            if *next >= states {
                return Err(Error::invalid(format!(
                    "state {q} moves to {next}, out of range 0..{states}"
                )));
            }
            if s.len() != r || !s.iter().all(in_range) {
                return Err(Error::invalid(format!(
                    "substitution of state {q} does not match the register set"
                )));
            }
        }
        if !mu.iter().flatten().all(in_range) {
            return Err(Error::invalid("output expression uses an unknown register"));
        }
        Ok(Cra {
            registers,
            delta,
            initial_state,
            nu0,
            mu,
        })
    }

    pub fn registers(&self) -> &[String] {
        &self.registers
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self) -> &[(usize, Substitution)] {
        &self.delta
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    pub fn nu0(&self) -> &[Rational] {
        &self.nu0
    }

    pub fn mu(&self) -> &[Option<RegisterExpr>] {
        &self.mu
    }

    /// Advances `(state, valuation)` by one step.
    fn step(&self, state: usize, valuation: &[Rational]) -> (usize, Vec<Rational>) {
        let (next, s) = &self.delta[state];
        (*next, s.iter().map(|e| e.eval(valuation)).collect())
    }

    fn output(&self, state: usize, valuation: &[Rational]) -> Result<Rational> {
        self.mu[state]
            .as_ref()
            .map(|e| e.eval(valuation))
            .ok_or(Error::OutputUndefined { state })
    }

    /// The value after `n` steps: valuations are propagated forward
    /// through each substitution, then the output of the reached state is
    /// evaluated.
    pub fn eval(&self, n: usize) -> Result<Rational> {
        let (mut q, mut v) = (self.initial_state, self.nu0.clone());
        for _ in 0..n {
            (q, v) = self.step(q, &v);
        }
        self.output(q, &v)
    }

    pub fn terms(&self, n: usize) -> Result<Vec<Rational>> {
        let (mut q, mut v) = (self.initial_state, self.nu0.clone());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                (q, v) = self.step(q, &v);
            }
            out.push(self.output(q, &v)?);
        }
        Ok(out)
    }

    pub fn check_copyless(&self) -> CopylessReport {
        for (q, (_, s)) in self.delta.iter().enumerate() {
            if let Some(x) = copyless_violation(s) {
                return CopylessReport {
                    copyless: false,
                    witness: Some((q, x)),
                };
            }
        }
        CopylessReport {
            copyless: true,
            witness: None,
        }
    }

    /// Every product in every image and output has a register-free factor.
    pub fn check_linear(&self) -> bool {
        self.delta
            .iter()
            .flat_map(|(_, s)| s.iter())
            .chain(self.mu.iter().flatten())
            .all(RegisterExpr::is_linear)
    }

    /// A register order, smallest first, such that every image of `x` in
    /// every substitution reads only `x` and registers above it. On failure
    /// returns a cycle `x_0, x_1, ..., x_0` of the cross-register dependencies.
    pub fn check_normal_form(&self) -> std::result::Result<Vec<usize>, Vec<usize>> {
        let r = self.registers.len();
        // deps[x]: registers other than x read by some image of x
        let mut deps = vec![std::collections::BTreeSet::new(); r];
        for (_, s) in &self.delta {
            for (x, e) in s.iter().enumerate() {
                deps[x].extend(e.vars().into_iter().filter(|&y| y != x));
            }
        }
        // x must come before every y it reads; Kahn's algorithm on in-degrees
        let mut indeg = vec![0usize; r];
        for d in &deps {
            for &y in d {
                indeg[y] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..r).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(r);
        while let Some(x) = ready.pop_first() {
            order.push(x);
            for &y in &deps[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if order.len() == r {
            return Ok(order);
        }
        // every remaining register still has a remaining predecessor; walk
        // predecessors until one repeats
        let remaining: Vec<bool> = (0..r).map(|x| !order.contains(&x)).collect();
        let start = (0..r).find(|&x| remaining[x]).expect("some register left");
        let pred = |y: usize| {
            (0..r)
                .find(|&x| remaining[x] && deps[x].contains(&y))
                .expect("remaining register has a remaining reader")
        };
        let mut walk = vec![start];
        let mut cur = start;
        loop {
            cur = pred(cur);
            if let Some(i) = walk.iter().position(|&w| w == cur) {
                let mut cycle: Vec<usize> = walk[i..].to_vec();
                cycle.reverse();
                cycle.push(cycle[0]);
                return Err(cycle);
            }
            walk.push(cur);
        }
    }

    pub(crate) fn register_names(&self, regs: &[usize]) -> Vec<String> {
        regs.iter().map(|&i| self.registers[i].clone()).collect()
    }

    /// States visited from the initial state: the first `tail` are visited
    /// once, the remaining `len - tail` repeat forever.
    pub fn lasso(&self) -> (Vec<usize>, usize) {
        let mut seen = vec![usize::MAX; self.n_states()];
        let mut states = Vec::new();
        let mut q = self.initial_state;
        while seen[q] == usize::MAX {
            seen[q] = states.len();
            states.push(q);
            q = self.delta[q].0;
        }
        (states, seen[q])
    }

    /// Composition of the substitutions along `count` steps from `state`.
    pub fn run_substitution(&self, state: usize, count: usize) -> Substitution {
        let mut s = identity_substitution(self.registers.len());
        let mut q = state;
        for _ in 0..count {
            s = compose_substitutions(&s, &self.delta[q].1);
            q = self.delta[q].0;
        }
        s
    }
}
