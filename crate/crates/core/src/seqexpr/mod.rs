//! Rational expressions denoting sequences of rationals.
//!
//! Atoms are arithmetic, geometric and finitely supported sequences;
//! operators are sum, Hadamard (pointwise) product, Cauchy product, Kleene
//! star, shift and shuffle. The poly-rational fragment excludes Cauchy
//! product and star.

mod parse;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{Polynomial, Rational};

pub use parse::parse;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeqExpr {
    /// `a, a + b, a + 2b, ...`
    Arith { a: Rational, b: Rational },
    /// `a, a*lambda, a*lambda^2, ...`
    Geo { a: Rational, lambda: Rational },
    /// Finite support: the listed values followed by zeros.
    Fin(Vec<Rational>),
    Sum(Box<SeqExpr>, Box<SeqExpr>),
    Hadamard(Box<SeqExpr>, Box<SeqExpr>),
    Cauchy(Box<SeqExpr>, Box<SeqExpr>),
    Star(Box<SeqExpr>),
    /// Prepends a value.
    Shift(Rational, Box<SeqExpr>),
    /// Interleaves the children: position `n` holds term `n / k` of child `n % k`.
    Shuffle(Vec<SeqExpr>),
}

/// Syntactic fragments of rational expressions.
///
/// Declaration order is alphabetical so that sets of fragments list as
/// `Det, FinWa, LinearCcra, PolyRat, Rat`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    /// Only geometric atoms sharing this ratio, under shift and shuffle.
    Det(Rational),
    /// Geometric atoms under sum, shift and shuffle.
    FinWa,
    /// Arithmetic and geometric atoms under sum, shift and shuffle.
    LinearCcra,
    /// No Cauchy product and no star.
    PolyRat,
    /// Every expression.
    Rat,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::Det(l) => write!(f, "det(lambda={l})"),
            Fragment::FinWa => f.write_str("finwa"),
            Fragment::LinearCcra => f.write_str("linear-ccra"),
            Fragment::PolyRat => f.write_str("polyrat"),
            Fragment::Rat => f.write_str("rat"),
        }
    }
}

impl SeqExpr {
    pub fn arith(a: Rational, b: Rational) -> Self {
        SeqExpr::Arith { a, b }
    }

    pub fn geo(a: Rational, lambda: Rational) -> Self {
        SeqExpr::Geo { a, lambda }
    }

    /// The constant sequence `c, c, c, ...`.
    pub fn constant(c: Rational) -> Self {
        SeqExpr::geo(c, Rational::one())
    }

    /// The zero sequence.
    pub fn zero() -> Self {
        SeqExpr::constant(Rational::zero())
    }

    pub fn fin(values: Vec<Rational>) -> Self {
        SeqExpr::Fin(values)
    }

    pub fn sum(l: SeqExpr, r: SeqExpr) -> Self {
        SeqExpr::Sum(Box::new(l), Box::new(r))
    }

    pub fn hadamard(l: SeqExpr, r: SeqExpr) -> Self {
        SeqExpr::Hadamard(Box::new(l), Box::new(r))
    }

    pub fn cauchy(l: SeqExpr, r: SeqExpr) -> Self {
        SeqExpr::Cauchy(Box::new(l), Box::new(r))
    }

    pub fn star(e: SeqExpr) -> Self {
        SeqExpr::Star(Box::new(e))
    }

    pub fn shift(a: Rational, e: SeqExpr) -> Self {
        SeqExpr::Shift(a, Box::new(e))
    }

    /// Prepends `values` in order, so the result starts with `values[0]`.
    pub fn shift_all(values: &[Rational], e: SeqExpr) -> Self {
        values
            .iter()
            .rev()
            .fold(e, |acc, v| SeqExpr::shift(v.clone(), acc))
    }

    pub fn shuffle(children: Vec<SeqExpr>) -> Result<Self> {
        if children.is_empty() {
            return Err(Error::Arity("shuffle needs at least one child".into()));
        }
        Ok(SeqExpr::Shuffle(children))
    }

    /// Sum of all `items`, or the zero sequence when empty.
    pub fn sum_all(items: impl IntoIterator<Item = SeqExpr>) -> Self {
        items
            .into_iter()
            .reduce(SeqExpr::sum)
            .unwrap_or_else(SeqExpr::zero)
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            SeqExpr::Arith { .. } | SeqExpr::Geo { .. } | SeqExpr::Fin(_) => 1,
            SeqExpr::Sum(l, r) | SeqExpr::Hadamard(l, r) | SeqExpr::Cauchy(l, r) => {
                1 + l.size() + r.size()
            }
            SeqExpr::Star(e) | SeqExpr::Shift(_, e) => 1 + e.size(),
            SeqExpr::Shuffle(cs) => 1 + cs.iter().map(SeqExpr::size).sum::<usize>(),
        }
    }

    /// First `n` terms of the denoted sequence.
    pub fn eval(&self, n: usize) -> Result<Vec<Rational>> {
        Ok(match self {
            SeqExpr::Arith { a, b } => {
                let mut out = Vec::with_capacity(n);
                let mut v = a.clone();
                for _ in 0..n {
                    out.push(v.clone());
                    v += b;
                }
                out
            }
            SeqExpr::Geo { a, lambda } => {
                let mut out = Vec::with_capacity(n);
                let mut v = a.clone();
                for _ in 0..n {
                    out.push(v.clone());
                    v *= lambda;
                }
                out
            }
            SeqExpr::Fin(values) => (0..n)
                .map(|i| values.get(i).cloned().unwrap_or_else(Rational::zero))
                .collect(),
            SeqExpr::Sum(l, r) => {
                let (l, r) = (l.eval(n)?, r.eval(n)?);
                l.into_iter().zip(r).map(|(a, b)| a + b).collect()
            }
            SeqExpr::Hadamard(l, r) => {
                let (l, r) = (l.eval(n)?, r.eval(n)?);
                l.into_iter().zip(r).map(|(a, b)| a * b).collect()
            }
            SeqExpr::Cauchy(l, r) => {
                let (l, r) = (l.eval(n)?, r.eval(n)?);
                (0..n)
                    .map(|m| (0..=m).map(|p| &l[p] * &r[m - p]).sum())
                    .collect()
            }
            SeqExpr::Star(e) => {
                let u = e.eval(n.max(1))?;
                if !u[0].is_zero() {
                    return Err(Error::StarUndefined {
                        value: u[0].to_string(),
                    });
                }
                let mut s: Vec<Rational> = Vec::with_capacity(n);
                for m in 0..n {
                    if m == 0 {
                        s.push(Rational::one());
                        continue;
                    }
                    let v = (1..=m).map(|i| &u[i] * &s[m - i]).sum();
                    s.push(v);
                }
                s
            }
            SeqExpr::Shift(a, e) => {
                if n == 0 {
                    return Ok(vec![]);
                }
                let mut out = Vec::with_capacity(n);
                out.push(a.clone());
                out.extend(e.eval(n - 1)?);
                out
            }
            SeqExpr::Shuffle(children) => {
                let k = children.len();
                if k == 0 {
                    return Err(Error::Arity("shuffle needs at least one child".into()));
                }
                let parts = children
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.eval(if n > j { (n - j).div_ceil(k) } else { 0 }))
                    .collect::<Result<Vec<_>>>()?;
                (0..n).map(|p| parts[p % k][p / k].clone()).collect()
            }
        })
    }

    /// All fragments whose syntactic restrictions the expression satisfies.
    pub fn fragments(&self) -> BTreeSet<Fragment> {
        let mut out = BTreeSet::new();
        out.insert(Fragment::Rat);
        let ops = self.ops();
        if ops.polyrat {
            out.insert(Fragment::PolyRat);
        }
        if ops.linear_ccra {
            out.insert(Fragment::LinearCcra);
        }
        if ops.finwa {
            out.insert(Fragment::FinWa);
        }
        if let Some(lambda) = self.det_ratio() {
            out.insert(Fragment::Det(lambda));
        }
        out
    }

    pub fn is_polyrat(&self) -> bool {
        self.ops().polyrat
    }

    fn ops(&self) -> OpsSummary {
        match self {
            SeqExpr::Arith { .. } => OpsSummary {
                polyrat: true,
                linear_ccra: true,
                finwa: false,
            },
            SeqExpr::Geo { .. } => OpsSummary::all(),
            SeqExpr::Fin(_) => OpsSummary {
                polyrat: true,
                linear_ccra: false,
                finwa: false,
            },
            SeqExpr::Sum(l, r) => l.ops().and(r.ops()),
            SeqExpr::Hadamard(l, r) => {
                let s = l.ops().and(r.ops());
                OpsSummary {
                    polyrat: s.polyrat,
                    linear_ccra: false,
                    finwa: false,
                }
            }
            SeqExpr::Cauchy(..) | SeqExpr::Star(_) => OpsSummary::none(),
            SeqExpr::Shift(_, e) => e.ops(),
            SeqExpr::Shuffle(cs) => cs.iter().fold(OpsSummary::all(), |acc, c| acc.and(c.ops())),
        }
    }

    /// The common ratio when the expression uses only `Geo_lambda`, shift and shuffle.
    fn det_ratio(&self) -> Option<Rational> {
        match self {
            SeqExpr::Geo { lambda, .. } => Some(lambda.clone()),
            SeqExpr::Shift(_, e) => e.det_ratio(),
            SeqExpr::Shuffle(cs) => {
                let mut it = cs.iter().map(SeqExpr::det_ratio);
                let first = it.next()??;
                for l in it {
                    if l? != first {
                        return None;
                    }
                }
                Some(first)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Copy)]
struct OpsSummary {
    polyrat: bool,
    linear_ccra: bool,
    finwa: bool,
}

impl OpsSummary {
    fn all() -> Self {
        OpsSummary {
            polyrat: true,
            linear_ccra: true,
            finwa: true,
        }
    }

    fn none() -> Self {
        OpsSummary {
            polyrat: false,
            linear_ccra: false,
            finwa: false,
        }
    }

    fn and(self, o: Self) -> Self {
        OpsSummary {
            polyrat: self.polyrat && o.polyrat,
            linear_ccra: self.linear_ccra && o.linear_ccra,
            finwa: self.finwa && o.finwa,
        }
    }
}

/// A poly-rational expression for the series `R / (1 - lambda x^ell)^k`.
///
/// The coefficient of `x^(ell n)` in `1/(1 - lambda x^ell)^k` is
/// `C(n + k - 1, k - 1) lambda^n`, and `C(n + k - 1, k - 1)` is the product
/// of `(n + j)/j` for `j = 1..k-1`, i.e. of the arithmetic sequences
/// `arith(1, 1/j)`. The stretched sequence is obtained by shuffling with
/// `ell - 1` zero sequences, and each monomial `r_i x^i` of `R` becomes an
/// `i`-fold zero shift of the same sequence scaled by `r_i`.
pub fn binomial_term_expr(
    numerator: &Polynomial,
    lambda: &Rational,
    ell: usize,
    k: usize,
) -> Result<SeqExpr> {
    if lambda.is_zero() {
        return Err(Error::domain("binomial term needs lambda != 0"));
    }
    if ell == 0 || k == 0 {
        return Err(Error::domain("binomial term needs ell >= 1 and k >= 1"));
    }
    let base = |scale: &Rational| -> SeqExpr {
        let mut e = SeqExpr::geo(scale.clone(), lambda.clone());
        for j in 1..k {
            let step = Rational::new(1.into(), (j as i64).into());
            e = SeqExpr::hadamard(e, SeqExpr::arith(Rational::one(), step));
        }
        if ell > 1 {
            let mut children = vec![e];
            children.extend((1..ell).map(|_| SeqExpr::zero()));
            e = SeqExpr::Shuffle(children);
        }
        e
    };
    let terms = numerator
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let zeros = vec![Rational::zero(); i];
            SeqExpr::shift_all(&zeros, base(c))
        });
    Ok(SeqExpr::sum_all(terms))
}

const PREC_SUM: u8 = 0;
const PREC_HADAMARD: u8 = 1;
const PREC_CAUCHY: u8 = 2;
const PREC_ATOM: u8 = 3;

impl SeqExpr {
    fn prec(&self) -> u8 {
        match self {
            SeqExpr::Sum(..) => PREC_SUM,
            SeqExpr::Hadamard(..) => PREC_HADAMARD,
            SeqExpr::Cauchy(..) => PREC_CAUCHY,
            _ => PREC_ATOM,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.fmt_prec(f, 0)?;
            return f.write_str(")");
        }
        match self {
            SeqExpr::Arith { a, b } => write!(f, "arith({a}, {b})"),
            SeqExpr::Geo { a, lambda } => write!(f, "geo({a}, {lambda})"),
            SeqExpr::Fin(vs) => {
                f.write_str("fin[")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            SeqExpr::Sum(l, r) => binary(f, l, " + ", r, PREC_SUM),
            SeqExpr::Hadamard(l, r) => binary(f, l, " * ", r, PREC_HADAMARD),
            SeqExpr::Cauchy(l, r) => binary(f, l, " . ", r, PREC_CAUCHY),
            SeqExpr::Star(e) => {
                f.write_str("star(")?;
                e.fmt_prec(f, 0)?;
                f.write_str(")")
            }
            SeqExpr::Shift(a, e) => {
                write!(f, "shift({a}, ")?;
                e.fmt_prec(f, 0)?;
                f.write_str(")")
            }
            SeqExpr::Shuffle(cs) => {
                f.write_str("shuffle(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    c.fmt_prec(f, 0)?;
                }
                f.write_str(")")
            }
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, l: &SeqExpr, op: &str, r: &SeqExpr, p: u8) -> fmt::Result {
    // left-associative: the right operand needs parentheses at equal precedence
    l.fmt_prec(f, p)?;
    f.write_str(op)?;
    r.fmt_prec(f, p + 1)
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl std::str::FromStr for SeqExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
