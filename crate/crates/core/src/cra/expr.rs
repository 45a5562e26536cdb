use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{parse_rational, Rational};

/// Register expression `e ::= x | r | e + e | e * e`, with registers by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RegisterExpr {
    Var(usize),
    Const(Rational),
    Add(Box<RegisterExpr>, Box<RegisterExpr>),
    Mul(Box<RegisterExpr>, Box<RegisterExpr>),
}

impl RegisterExpr {
    pub fn var(i: usize) -> Self {
        RegisterExpr::Var(i)
    }

    pub fn constant(c: Rational) -> Self {
        RegisterExpr::Const(c)
    }

    pub fn add(l: RegisterExpr, r: RegisterExpr) -> Self {
        RegisterExpr::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: RegisterExpr, r: RegisterExpr) -> Self {
        RegisterExpr::Mul(Box::new(l), Box::new(r))
    }

    pub fn eval(&self, valuation: &[Rational]) -> Rational {
        match self {
            RegisterExpr::Var(i) => valuation[*i].clone(),
            RegisterExpr::Const(c) => c.clone(),
            RegisterExpr::Add(l, r) => l.eval(valuation) + r.eval(valuation),
            RegisterExpr::Mul(l, r) => l.eval(valuation) * r.eval(valuation),
        }
    }

    /// Adds one to `counts[x]` for every occurrence of register `x`.
    pub fn count_vars(&self, counts: &mut [usize]) {
        match self {
            RegisterExpr::Var(i) => counts[*i] += 1,
            RegisterExpr::Const(_) => {}
            RegisterExpr::Add(l, r) | RegisterExpr::Mul(l, r) => {
                l.count_vars(counts);
                r.count_vars(counts);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            RegisterExpr::Var(i) => {
                out.insert(*i);
            }
            RegisterExpr::Const(_) => {}
            RegisterExpr::Add(l, r) | RegisterExpr::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        self.vars().last().copied()
    }

    pub fn uses(&self, x: usize) -> bool {
        match self {
            RegisterExpr::Var(i) => *i == x,
            RegisterExpr::Const(_) => false,
            RegisterExpr::Add(l, r) | RegisterExpr::Mul(l, r) => l.uses(x) || r.uses(x),
        }
    }

    /// Multiplication only by variable-free factors.
    pub fn is_linear(&self) -> bool {
        match self {
            RegisterExpr::Var(_) | RegisterExpr::Const(_) => true,
            RegisterExpr::Add(l, r) => l.is_linear() && r.is_linear(),
            RegisterExpr::Mul(l, r) => {
                (l.vars().is_empty() || r.vars().is_empty()) && l.is_linear() && r.is_linear()
            }
        }
    }

    /// Replaces every register `x` by `images[x]`.
    pub fn substitute(&self, images: &[RegisterExpr]) -> RegisterExpr {
        match self {
            RegisterExpr::Var(i) => images[*i].clone(),
            RegisterExpr::Const(c) => RegisterExpr::Const(c.clone()),
            RegisterExpr::Add(l, r) => RegisterExpr::add(l.substitute(images), r.substitute(images)),
            RegisterExpr::Mul(l, r) => RegisterExpr::mul(l.substitute(images), r.substitute(images)),
        }
    }

    /// Renumbers registers with `f`.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> RegisterExpr {
        match self {
            RegisterExpr::Var(i) => RegisterExpr::Var(f(*i)),
            RegisterExpr::Const(c) => RegisterExpr::Const(c.clone()),
            RegisterExpr::Add(l, r) => RegisterExpr::add(l.map_vars(f), r.map_vars(f)),
            RegisterExpr::Mul(l, r) => RegisterExpr::mul(l.map_vars(f), r.map_vars(f)),
        }
    }

    /// Infix form using the given register names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { e: self, names }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, names: &[String], min: u8) -> fmt::Result {
        let prec = match self {
            RegisterExpr::Add(..) => 0,
            RegisterExpr::Mul(..) => 1,
            _ => 2,
        };
        if prec < min {
            f.write_str("(")?;
            self.fmt_prec(f, names, 0)?;
            return f.write_str(")");
        }
        match self {
            RegisterExpr::Var(i) => match names.get(*i) {
                Some(n) => f.write_str(n),
                None => write!(f, "#{i}"),
            },
            RegisterExpr::Const(c) => write!(f, "{c}"),
            RegisterExpr::Add(l, r) => {
                l.fmt_prec(f, names, 0)?;
                f.write_str(" + ")?;
                r.fmt_prec(f, names, 1)
            }
            RegisterExpr::Mul(l, r) => {
                l.fmt_prec(f, names, 1)?;
                f.write_str("*")?;
                r.fmt_prec(f, names, 2)
            }
        }
    }
}

struct Named<'a> {
    e: &'a RegisterExpr,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.e.fmt_prec(f, self.names, 0)
    }
}

/// Parses an infix register expression over `names`:
/// `sum := prod ('+' prod)*`, `prod := atom ('*' atom)*`,
/// `atom := rational | name | '(' sum ')'`.
pub fn parse_register_expr(text: &str, names: &[String]) -> Result<RegisterExpr> {
    let mut p = ExprParser {
        src: text.as_bytes(),
        pos: 0,
        names,
    };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl ExprParser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<RegisterExpr> {
        let mut e = self.prod()?;
        while self.eat(b'+') {
            e = RegisterExpr::add(e, self.prod()?);
        }
        Ok(e)
    }

    fn prod(&mut self) -> Result<RegisterExpr> {
        let mut e = self.atom()?;
        while self.eat(b'*') {
            e = RegisterExpr::mul(e, self.atom()?);
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RegisterExpr> {
        if self.eat(b'(') {
            let e = self.sum()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        self.skip_ws();
        let start = self.pos;
        let c = self.src.get(self.pos).copied();
        match c {
            Some(b'-') | Some(b'0'..=b'9') => {
                self.pos += 1;
                let mut slash = false;
                while let Some(&d) = self.src.get(self.pos) {
                    if d.is_ascii_digit() || (d == b'/' && !slash) {
                        slash |= d == b'/';
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                parse_rational(text)
                    .map(RegisterExpr::Const)
                    .map_err(|_| Error::Parse {
                        pos: start,
                        msg: format!("invalid rational '{text}'"),
                    })
            }
            Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                while let Some(&d) = self.src.get(self.pos) {
                    if d.is_ascii_alphanumeric() || d == b'_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.names.iter().position(|n| n == name) {
                    Some(i) => Ok(RegisterExpr::Var(i)),
                    None => Err(Error::Parse {
                        pos: start,
                        msg: format!("unknown register '{name}'"),
                    }),
                }
            }
            _ => Err(self.error("expected a register, a rational or '('")),
        }
    }
}

/// Polynomial in the registers, keyed by sorted multisets of register indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RegPoly {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl RegPoly {
    pub fn zero() -> Self {
        RegPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = RegPoly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        let mut p = RegPoly::zero();
        p.terms.insert(vec![i], Rational::one());
        p
    }

    pub fn from_expr(e: &RegisterExpr) -> Self {
        match e {
            RegisterExpr::Var(i) => RegPoly::var(*i),
            RegisterExpr::Const(c) => RegPoly::constant(c.clone()),
            RegisterExpr::Add(l, r) => RegPoly::from_expr(l).add(&RegPoly::from_expr(r)),
            RegisterExpr::Mul(l, r) => RegPoly::from_expr(l).mul(&RegPoly::from_expr(r)),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.degree() == 0
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![]).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the monomial consisting of register `x` alone.
    pub fn linear_coeff(&self, x: usize) -> Rational {
        self.terms.get(&vec![x]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &RegPoly) -> RegPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn mul(&self, other: &RegPoly) -> RegPoly {
        let mut out = RegPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = [ma.as_slice(), mb.as_slice()].concat();
                m.sort_unstable();
                let e = out.terms.entry(m.clone()).or_insert_with(Rational::zero);
                *e += ca * cb;
                if e.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }

    pub fn eval(&self, valuation: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * &valuation[i]))
            .sum()
    }

    /// Replaces every register `x` by `images[x]`.
    pub fn substitute(&self, images: &[RegPoly]) -> RegPoly {
        let mut out = RegPoly::zero();
        for (m, c) in &self.terms {
            let t = m
                .iter()
                .fold(RegPoly::constant(c.clone()), |acc, &i| acc.mul(&images[i]));
            out = out.add(&t);
        }
        out
    }

    /// Replaces the registers in `values` by constants, keeping the others.
    pub fn partial_eval(&self, values: &BTreeMap<usize, Rational>) -> RegPoly {
        let mut out = RegPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for &i in m {
                match values.get(&i) {
                    Some(v) => coef *= v,
                    None => rest.push(i),
                }
            }
            let mut t = RegPoly::zero();
            if !coef.is_zero() {
                t.terms.insert(rest, coef);
            }
            out = out.add(&t);
        }
        out
    }

    /// `sum a_i x_i + b` as an expression, registers in index order.
    /// Only meaningful for degree at most 1.
    pub fn to_affine_expr(&self) -> RegisterExpr {
        let mut parts: Vec<RegisterExpr> = self
            .terms
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .map(|(m, c)| {
                let v = RegisterExpr::Var(m[0]);
                if c.is_one() {
                    v
                } else {
                    RegisterExpr::mul(RegisterExpr::Const(c.clone()), v)
                }
            })
            .collect();
        let b = self.constant_term();
        if !b.is_zero() || parts.is_empty() {
            parts.push(RegisterExpr::Const(b));
        }
        parts
            .into_iter()
            .reduce(RegisterExpr::add)
            .expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let ns = names(&["x", "y"]);
        let e = parse_register_expr("2*x+1", &ns).unwrap();
        assert_eq!(
            e,
            RegisterExpr::add(
                RegisterExpr::mul(RegisterExpr::Const(int(2)), RegisterExpr::Var(0)),
                RegisterExpr::Const(int(1))
            )
        );
        assert_eq!(e.display(&ns).to_string(), "2*x + 1");
        for text in ["(x + y)*(x + 1/2)", "x + (y + -3)", "x*(y*2)", "-1/3*y"] {
            let e = parse_register_expr(text, &ns).unwrap();
            let printed = e.display(&ns).to_string();
            assert_eq!(parse_register_expr(&printed, &ns).unwrap(), e, "{printed}");
        }
        assert!(matches!(
            parse_register_expr("x + z", &ns),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(parse_register_expr("x +", &ns).is_err());
        assert!(parse_register_expr("1/0", &ns).is_err());
    }

    #[test]
    fn linearity() {
        let ns = names(&["x", "y"]);
        let p = |s: &str| parse_register_expr(s, &ns).unwrap();
        assert!(p("2*x + y*3 + 1").is_linear());
        assert!(p("(1 + 2)*x").is_linear());
        assert!(!p("x*y").is_linear());
        assert!(!p("(x + 1)*(y + 1)").is_linear());
    }

    #[test]
    fn polynomial_forms() {
        let ns = names(&["x", "y"]);
        let e = parse_register_expr("(x + 1)*(y + -1) + x", &ns).unwrap();
        let poly = RegPoly::from_expr(&e);
        // x y - x + y - 1 + x = x y + y - 1
        assert_eq!(poly.degree(), 2);
        assert_eq!(poly.linear_coeff(0), int(0));
        assert_eq!(poly.linear_coeff(1), int(1));
        assert_eq!(poly.constant_term(), int(-1));
        let v = [rat(1, 2), int(3)];
        assert_eq!(poly.eval(&v), e.eval(&v));
        let mut fixed = BTreeMap::new();
        fixed.insert(1usize, int(2));
        let q = poly.partial_eval(&fixed);
        assert_eq!(q.to_affine_expr().display(&ns).to_string(), "2*x + 1");
        assert_eq!(RegPoly::zero().to_affine_expr(), RegisterExpr::Const(int(0)));
    }
}
