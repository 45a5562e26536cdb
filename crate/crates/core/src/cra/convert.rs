use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};

use super::{identity_substitution, Cra, RegPoly, RegisterExpr, Substitution};
use crate::error::{Error, Result};
use crate::ratmath::Rational;
use crate::seqexpr::SeqExpr;

impl Cra {
    /// Poly-rational expression for a copyless machine in normal form.
    ///
    /// The run is a lasso: `tail` states visited once, then a loop of
    /// length `ell`. For each offset `j` in the loop, the subsequence at
    /// positions `tail + j + ell m` is the output of state `p_j` under the
    /// valuation `nu_j` iterated through the loop substitution `sigma_j`.
    /// Each register then either stabilises to a constant or, once the
    /// registers it reads have stabilised, follows `x -> a x + b`.
    pub fn to_expr(&self) -> Result<SeqExpr> {
        let report = self.check_copyless();
        if let Some((state, x)) = report.witness {
            return Err(Error::NotCopyless {
                state,
                register: self.registers[x].clone(),
            });
        }
        if let Err(cycle) = self.check_normal_form() {
            return Err(Error::NoNormalFormOrder {
                cycle: self.register_names(&cycle),
            });
        }
        let (states, tail) = self.lasso();
        let ell = states.len() - tail;

        let mut head = Vec::with_capacity(tail);
        let (mut q, mut v) = (self.initial_state, self.nu0.clone());
        for _ in 0..tail {
            head.push(self.output(q, &v)?);
            (q, v) = self.step(q, &v);
        }
        let mut children = Vec::with_capacity(ell);
        for _ in 0..ell {
            let sigma = self.run_substitution(q, ell);
            let out = self.mu[q]
                .as_ref()
                .ok_or(Error::OutputUndefined { state: q })?;
            let mut regs = RegisterSequences::new(self, &sigma, v.clone());
            children.push(regs.translate(out)?);
            (q, v) = self.step(q, &v);
        }
        Ok(SeqExpr::shift_all(&head, SeqExpr::Shuffle(children)))
    }
}

/// Register value sequences `m -> (nu o sigma^m)(x)` for one loop offset.
struct RegisterSequences<'a> {
    cra: &'a Cra,
    sigma: &'a Substitution,
    sigma_poly: Vec<RegPoly>,
    /// `nu o sigma^m` for `m = 0, 1, ...`, grown on demand.
    valuations: Vec<Vec<Rational>>,
    /// Stabilisation step and stable symbolic value per register.
    stable: HashMap<usize, (usize, RegPoly)>,
}

impl<'a> RegisterSequences<'a> {
    fn new(cra: &'a Cra, sigma: &'a Substitution, nu: Vec<Rational>) -> Self {
        RegisterSequences {
            cra,
            sigma,
            sigma_poly: sigma.iter().map(RegPoly::from_expr).collect(),
            valuations: vec![nu],
            stable: HashMap::new(),
        }
    }

    fn valuation(&mut self, m: usize) -> &[Rational] {
        while self.valuations.len() <= m {
            let last = self.valuations.last().expect("nonempty");
            let next = self.sigma.iter().map(|e| e.eval(last)).collect();
            self.valuations.push(next);
        }
        &self.valuations[m]
    }

    fn values(&mut self, x: usize, count: usize) -> Vec<Rational> {
        (0..count).map(|m| self.valuation(m)[x].clone()).collect()
    }

    /// First `N` with `sigma^N(x) = sigma^(N+1)(x)` symbolically, and that value.
    fn stabilise(&mut self, x: usize) -> Result<(usize, RegPoly)> {
        if let Some(s) = self.stable.get(&x) {
            return Ok(s.clone());
        }
        let bound = self.cra.registers.len() + 1;
        let mut p = RegPoly::var(x);
        for n in 0..=bound {
            let next = p.substitute(&self.sigma_poly);
            if next == p {
                self.stable.insert(x, (n, p.clone()));
                return Ok((n, p));
            }
            p = next;
        }
        Err(Error::Stabilization(format!(
            "register {} still changes after {bound} steps",
            self.cra.registers[x]
        )))
    }

    fn register(&mut self, x: usize) -> Result<SeqExpr> {
        if !self.sigma[x].uses(x) {
            let (n, p) = self.stabilise(x)?;
            let c = p.eval(&self.valuations[0]);
            let prefix = self.values(x, n);
            return Ok(SeqExpr::shift_all(&prefix, SeqExpr::constant(c)));
        }
        // the other registers read by x do not read themselves, so they
        // settle; past that point x evolves affinely
        let mut fixed = BTreeMap::new();
        let mut n = 0usize;
        for y in self.sigma[x].vars() {
            if y == x {
                continue;
            }
            let (ny, p) = self.stabilise(y)?;
            n = n.max(ny);
            fixed.insert(y, p.eval(&self.valuations[0]));
        }
        let affine = self.sigma_poly[x].partial_eval(&fixed);
        if affine.degree() > 1 || affine.terms().keys().any(|m| m.iter().any(|&v| v != x)) {
            return Err(Error::Stabilization(format!(
                "image of {} is not affine once the other registers settle",
                self.cra.registers[x]
            )));
        }
        let a = affine.linear_coeff(x);
        let b = affine.constant_term();
        let prefix = self.values(x, n);
        let v0 = self.valuation(n)[x].clone();
        let body = if a.is_one() {
            SeqExpr::arith(v0, b)
        } else if a.is_zero() {
            SeqExpr::shift(v0, SeqExpr::constant(b))
        } else {
            // a^m v0 + b (a^m - 1)/(a - 1)
            let fix = &b / (&a - Rational::one());
            SeqExpr::sum(
                SeqExpr::geo(v0 + &fix, a),
                SeqExpr::constant(-fix),
            )
        };
        Ok(SeqExpr::shift_all(&prefix, body))
    }

    fn translate(&mut self, e: &RegisterExpr) -> Result<SeqExpr> {
        Ok(match e {
            RegisterExpr::Var(x) => self.register(*x)?,
            RegisterExpr::Const(c) => SeqExpr::constant(c.clone()),
            RegisterExpr::Add(l, r) => SeqExpr::sum(self.translate(l)?, self.translate(r)?),
            RegisterExpr::Mul(l, r) => SeqExpr::hadamard(self.translate(l)?, self.translate(r)?),
        })
    }
}

fn names(n: usize) -> Vec<String> {
    if n == 1 {
        return vec!["x".into()];
    }
    (0..n).map(|i| format!("x{i}")).collect()
}

fn offset(e: &RegisterExpr, by: usize) -> RegisterExpr {
    e.map_vars(&|i| i + by)
}

fn single(nu: Rational, image: RegisterExpr) -> Cra {
    Cra::new(
        names(1),
        vec![(0, vec![image])],
        0,
        vec![nu],
        vec![Some(RegisterExpr::Var(0))],
    )
    .expect("well-formed")
}

/// Explores reachable product states breadth-first. `step` maps a state
/// to its successor, substitution and output.
fn explore<S: Clone + Eq + std::hash::Hash>(
    registers: usize,
    nu0: Vec<Rational>,
    start: S,
    step: impl Fn(&S) -> (S, Substitution, Option<RegisterExpr>),
) -> Cra {
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut order = vec![start.clone()];
    index.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut rows = Vec::new();
    while let Some(s) = queue.pop_front() {
        let (next, subst, out) = step(&s);
        let id = match index.get(&next) {
            Some(&i) => i,
            None => {
                let i = order.len();
                index.insert(next.clone(), i);
                order.push(next.clone());
                queue.push_back(next);
                i
            }
        };
        rows.push((id, subst, out));
    }
    let (delta, mu) = rows.into_iter().map(|(n, s, o)| ((n, s), o)).unzip();
    Cra::new(names(registers), delta, 0, nu0, mu).expect("well-formed product")
}

fn combine(a: &Cra, b: &Cra, op: fn(RegisterExpr, RegisterExpr) -> RegisterExpr) -> Cra {
    let ra = a.registers.len();
    let rb = b.registers.len();
    let nu0 = [a.nu0.clone(), b.nu0.clone()].concat();
    explore(ra + rb, nu0, (a.initial_state, b.initial_state), |&(p, q)| {
        let (np, sp) = &a.delta[p];
        let (nq, sq) = &b.delta[q];
        let subst = sp.iter().cloned().chain(sq.iter().map(|e| offset(e, ra))).collect();
        let out = match (&a.mu[p], &b.mu[q]) {
            (Some(x), Some(y)) => Some(op(x.clone(), offset(y, ra))),
            _ => None,
        };
        ((*np, *nq), subst, out)
    })
}

/// Compiles a poly-rational expression into a copyless machine.
pub fn compile_expr_to_ccra(e: &SeqExpr) -> Result<Cra> {
    Ok(match e {
        SeqExpr::Geo { a, lambda } => single(
            a.clone(),
            RegisterExpr::mul(RegisterExpr::Const(lambda.clone()), RegisterExpr::Var(0)),
        ),
        SeqExpr::Arith { a, b } => single(
            a.clone(),
            RegisterExpr::add(RegisterExpr::Var(0), RegisterExpr::Const(b.clone())),
        ),
        SeqExpr::Fin(values) => {
            let n = values.len();
            let delta = (0..=n).map(|i| ((i + 1).min(n), vec![])).collect();
            let mu = (0..=n)
                .map(|i| {
                    Some(RegisterExpr::Const(
                        values.get(i).cloned().unwrap_or_else(Rational::zero),
                    ))
                })
                .collect();
            Cra::new(vec![], delta, 0, vec![], mu)?
        }
        SeqExpr::Sum(l, r) => combine(
            &compile_expr_to_ccra(l)?,
            &compile_expr_to_ccra(r)?,
            RegisterExpr::add,
        ),
        SeqExpr::Hadamard(l, r) => combine(
            &compile_expr_to_ccra(l)?,
            &compile_expr_to_ccra(r)?,
            RegisterExpr::mul,
        ),
        SeqExpr::Shift(a, inner) => {
            let c = compile_expr_to_ccra(inner)?;
            let r = c.registers.len();
            let mut delta = vec![(c.initial_state + 1, identity_substitution(r))];
            delta.extend(c.delta.iter().map(|(n, s)| (n + 1, s.clone())));
            let mut mu = vec![Some(RegisterExpr::Const(a.clone()))];
            mu.extend(c.mu.iter().cloned());
            Cra::new(c.registers.clone(), delta, 0, c.nu0.clone(), mu)?
        }
        SeqExpr::Shuffle(children) => {
            if children.is_empty() {
                return Err(Error::Arity("shuffle needs at least one child".into()));
            }
            let parts = children
                .iter()
                .map(compile_expr_to_ccra)
                .collect::<Result<Vec<_>>>()?;
            let k = parts.len();
            let mut offsets = Vec::with_capacity(k);
            let mut total = 0;
            for p in &parts {
                offsets.push(total);
                total += p.registers.len();
            }
            let nu0 = parts.iter().flat_map(|p| p.nu0.iter().cloned()).collect();
            let start: (usize, Vec<usize>) = (0, parts.iter().map(|p| p.initial_state).collect());
            explore(total, nu0, start, |(phase, states)| {
                let i = *phase;
                let child = &parts[i];
                let (next_i, s) = &child.delta[states[i]];
                let mut subst = identity_substitution(total);
                for (j, img) in s.iter().enumerate() {
                    subst[offsets[i] + j] = offset(img, offsets[i]);
                }
                let mut next = states.clone();
                next[i] = *next_i;
                let out = child.mu[states[i]].as_ref().map(|m| offset(m, offsets[i]));
                (((i + 1) % k, next), subst, out)
            })
        }
        SeqExpr::Cauchy(..) | SeqExpr::Star(_) => {
            return Err(Error::Fragment(format!(
                "{e} uses Cauchy product or star, which are outside the poly-rational fragment"
            )))
        }
    })
}
