//! JSON forms of automata, machines, recurrences and generating functions.
//!
//! Rationals are written as strings `"a/b"` or `"a"`; integer JSON numbers
//! are accepted on input.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::cra::{parse_register_expr, Cra, RegisterExpr};
use crate::error::{Error, Result};
use crate::lrs::Lrs;
use crate::ratmath::{format_rational, parse_rational, Polynomial, Rational, RationalFunction};
use crate::wa::WeightedAutomaton;

#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(untagged)]
enum RatJson {
    Text(String),
    Int(i64),
}

impl RatJson {
    fn value(&self) -> Result<Rational> {
        match self {
            RatJson::Text(s) => parse_rational(s),
            RatJson::Int(i) => Ok(Rational::from_integer((*i).into())),
        }
    }

    fn from(r: &Rational) -> Self {
        RatJson::Text(format_rational(r))
    }
}

fn rationals(v: &[RatJson]) -> Result<Vec<Rational>> {
    v.iter().map(RatJson::value).collect()
}

fn decode<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        pos: e.column(),
        msg: format!("invalid {what} JSON at line {}: {e}", e.line()),
    })
}

fn encode<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaJson {
    states: usize,
    #[serde(default)]
    initial: Vec<(usize, RatJson)>,
    #[serde(default, rename = "final")]
    finals: Vec<(usize, RatJson)>,
    #[serde(default)]
    transitions: Vec<(usize, usize, RatJson)>,
}

pub fn wa_from_json(text: &str) -> Result<WeightedAutomaton> {
    let j: WaJson = decode(text, "automaton")?;
    let pairs = |v: &[(usize, RatJson)]| -> Result<Vec<(usize, Rational)>> {
        v.iter().map(|(q, w)| Ok((*q, w.value()?))).collect()
    };
    let transitions = j
        .transitions
        .iter()
        .map(|(p, q, w)| Ok((*p, *q, w.value()?)))
        .collect::<Result<Vec<_>>>()?;
    WeightedAutomaton::from_parts(j.states, &pairs(&j.initial)?, &pairs(&j.finals)?, &transitions)
}

pub fn wa_to_json(a: &WeightedAutomaton) -> String {
    let nonzero = |v: &[Rational]| {
        v.iter()
            .enumerate()
            .filter(|(_, w)| !num_traits::Zero::is_zero(*w))
            .map(|(q, w)| (q, RatJson::from(w)))
            .collect()
    };
    encode(&WaJson {
        states: a.n_states(),
        initial: nonzero(a.initial()),
        finals: nonzero(a.finals()),
        transitions: a
            .transitions()
            .into_iter()
            .map(|(p, q, w)| (p, q, RatJson::from(&w)))
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CraJson {
    registers: Vec<String>,
    states: usize,
    #[serde(default)]
    initial_state: usize,
    #[serde(default)]
    nu0: BTreeMap<String, RatJson>,
    delta: Vec<(usize, BTreeMap<String, String>)>,
    #[serde(default)]
    mu: BTreeMap<String, String>,
}

/// Registers missing from a substitution keep their value; registers
/// missing from `nu0` start at 0.
pub fn cra_from_json(text: &str) -> Result<Cra> {
    let j: CraJson = decode(text, "machine")?;
    let names = &j.registers;
    let index = |n: &str| {
        names
            .iter()
            .position(|r| r == n)
            .ok_or_else(|| Error::invalid(format!("unknown register '{n}'")))
    };
    if j.delta.len() != j.states {
        return Err(Error::invalid(format!(
            "{} states declared but {} transitions given",
            j.states,
            j.delta.len()
        )));
    }
    let mut nu0 = vec![Rational::from_integer(0.into()); names.len()];
    for (n, v) in &j.nu0 {
        nu0[index(n)?] = v.value()?;
    }
    let mut delta = Vec::with_capacity(j.states);
    for (next, images) in &j.delta {
        let mut s: Vec<RegisterExpr> = (0..names.len()).map(RegisterExpr::Var).collect();
        for (n, e) in images {
            s[index(n)?] = parse_register_expr(e, names)?;
        }
        delta.push((*next, s));
    }
    let mut mu = vec![None; j.states];
    for (q, e) in &j.mu {
        let q: usize = q
            .parse()
            .map_err(|_| Error::invalid(format!("output map key '{q}' is not a state")))?;
        if q >= j.states {
            return Err(Error::invalid(format!("output map names state {q} out of range")));
        }
        mu[q] = Some(parse_register_expr(e, names)?);
    }
    Cra::new(names.clone(), delta, j.initial_state, nu0, mu)
}

pub fn cra_to_json(c: &Cra) -> String {
    let names = c.registers();
    encode(&CraJson {
        registers: names.to_vec(),
        states: c.n_states(),
        initial_state: c.initial_state(),
        nu0: names
            .iter()
            .cloned()
            .zip(c.nu0().iter().map(RatJson::from))
            .collect(),
        delta: c
            .delta()
            .iter()
            .map(|(next, s)| {
                let images = names
                    .iter()
                    .cloned()
                    .zip(s.iter().map(|e| e.display(names).to_string()))
                    .collect();
                (*next, images)
            })
            .collect(),
        mu: c
            .mu()
            .iter()
            .enumerate()
            .filter_map(|(q, e)| e.as_ref().map(|e| (q.to_string(), e.display(names).to_string())))
            .collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LrsJson {
    coeffs: Vec<RatJson>,
    init: Vec<RatJson>,
}

pub fn lrs_from_json(text: &str) -> Result<Lrs> {
    let j: LrsJson = decode(text, "recurrence")?;
    Lrs::new(rationals(&j.coeffs)?, rationals(&j.init)?)
}

pub fn lrs_to_json(l: &Lrs) -> String {
    encode(&LrsJson {
        coeffs: l.coeffs().iter().map(RatJson::from).collect(),
        init: l.init().iter().map(RatJson::from).collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    num: Vec<RatJson>,
    den: Vec<RatJson>,
}

/// Coefficient arrays, lowest degree first. The result is reduced.
pub fn series_from_json(text: &str) -> Result<RationalFunction> {
    let j: SeriesJson = decode(text, "series")?;
    RationalFunction::new(
        Polynomial::new(rationals(&j.num)?),
        Polynomial::new(rationals(&j.den)?),
    )
}

/// Either the JSON form or printed text such as `x/(1 - x - x^2)`.
pub fn series_from_str(text: &str) -> Result<RationalFunction> {
    if text.trim_start().starts_with('{') {
        return series_from_json(text);
    }
    let mut p = SeriesText { src: text.as_bytes(), pos: 0 };
    let (num, den) = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    RationalFunction::new(num, den)
}

type Frac = (Polynomial, Polynomial);

// arithmetic over Q(x); implicit product binds like `*`
struct SeriesText<'a> {
    src: &'a [u8],
    pos: usize,
}

impl SeriesText<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: format!("series text: {msg}"),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Frac> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            let (n, d) = self.product()?;
            (-&n, d)
        } else {
            self.product()?
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let (n, d) = self.product()?;
            let n = if op == b'-' { -&n } else { n };
            acc = (&(&acc.0 * &d) + &(&n * &acc.1), &acc.1 * &d);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Frac> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    acc = (&acc.0 * &n, &acc.1 * &d);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let (n, d) = self.power()?;
                    if n.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = (&acc.0 * &d, &acc.1 * &n);
                }
                Some(b'x' | b'(') => {
                    let (n, d) = self.power()?;
                    acc = (&acc.0 * &n, &acc.1 * &d);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let (n, d) = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.digits()?;
            let e: usize = e.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok((n.pow(e), d.pow(e)));
        }
        Ok((n, d))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok((Polynomial::x(), Polynomial::one()))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let c = parse_rational(&self.digits()?)?;
                Ok((Polynomial::constant(c), Polynomial::one()))
            }
            _ => Err(self.error("expected a number, x or '('")),
        }
    }
}

pub fn series_to_json(f: &RationalFunction) -> String {
    let coeffs = |p: &Polynomial| p.coeffs().iter().map(RatJson::from).collect();
    encode(&SeriesJson {
        num: coeffs(f.num()),
        den: coeffs(f.den()),
    })
}

/// A list of rationals as a JSON array of strings.
pub fn rationals_to_json(v: &[Rational]) -> String {
    serde_json::to_string(&v.iter().map(format_rational).collect::<Vec<_>>()).expect("strings")
}
