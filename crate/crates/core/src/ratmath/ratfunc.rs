use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A rational generating function `P/Q` with `Q(0) = 1`.
///
/// Values built with [`RationalFunction::new`] are reduced
/// (`gcd(P, Q) = 1`), so two reduced values denote the same power series
/// exactly when they are structurally equal. [`RationalFunction::unreduced`]
/// keeps a chosen denominator, which the binomial extension relies on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        Ok(Self::unreduced(num, den)?.reduced())
    }

    /// Normalises `Q(0) = 1` but keeps common factors of `P` and `Q`.
    pub fn unreduced(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("rational function with zero denominator"));
        }
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(Error::domain(format!(
                "denominator {den} vanishes at 0; no power series expansion"
            )));
        }
        let inv = c0.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_reduced(&self) -> bool {
        self.num.gcd(&self.den).is_one() || (self.num.is_zero() && self.den.is_one())
    }

    pub fn reduced(&self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.div_exact(&g).expect("gcd divides num");
        let den = self.den.div_exact(&g).expect("gcd divides den");
        let inv = den.constant_term().recip();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// First `n` coefficients of the power series, using the recurrence
    /// `u_m = P_m - sum_{i>=1} Q_i u_{m-i}` induced by `Q(0) = 1`.
    pub fn expand(&self, n: usize) -> Vec<Rational> {
        let q = self.den.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for m in 0..n {
            let mut u = self.num.coeff(m);
            for (i, qi) in q.iter().enumerate().skip(1).take(m) {
                if !qi.is_zero() {
                    u -= qi * &out[m - i];
                }
            }
            out.push(u);
        }
        out
    }

    /// Same power series, regardless of reduction.
    pub fn same_series(&self, other: &RationalFunction) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .reduced()
    }

    /// `x * f`.
    pub fn shift(&self) -> Self {
        RationalFunction {
            num: self.num.shift_up(1),
            den: self.den.clone(),
        }
    }

    /// The reduced generating function of a sequence whose linear
    /// complexity is at most `terms.len() / 2`.
    pub fn from_terms(terms: &[Rational]) -> Self {
        let (c, len) = minimal_recurrence(terms);
        let s = Polynomial::new(terms.to_vec());
        let num = (&s * &c).truncate(len);
        Self::new(num, c).expect("connection polynomial has constant term 1")
    }
}

/// Berlekamp–Massey over the rationals: the shortest connection polynomial
/// `C = 1 + c_1 x + ... ` with `sum_i c_i s_{n-i} = 0` for `n >= L`, and `L`.
pub fn minimal_recurrence(terms: &[Rational]) -> (Polynomial, usize) {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut len = 0usize;
    let mut m = 1usize;
    let mut last = Rational::one();
    for n in 0..terms.len() {
        let mut d = terms[n].clone();
        for i in 1..=len.min(c.len() - 1) {
            if !c[i].is_zero() {
                d += &c[i] * &terms[n - i];
            }
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d / &last;
        let mut next = c.clone();
        if next.len() < b.len() + m {
            next.resize(b.len() + m, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            next[i + m] -= &coef * bi;
        }
        if 2 * len <= n {
            b = std::mem::replace(&mut c, next);
            len = n + 1 - len;
            last = d;
            m = 1;
        } else {
            c = next;
            m += 1;
        }
    }
    (Polynomial::new(c), len)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let g = self.den.gcd(&rhs.den);
        let l = self.den.div_exact(&g).expect("gcd divides");
        let r = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &r) + &(&rhs.num * &l);
        let den = &self.den * &r;
        RationalFunction::new(num, den).expect("product of unit-constant denominators")
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of unit-constant denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || p.to_string().contains('/')
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
