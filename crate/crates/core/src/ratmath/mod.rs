//! Exact arithmetic over the rationals.
//!
//! Rationals are [`num_rational::BigRational`] values, which are always kept
//! in lowest terms with a positive denominator, so structural equality is
//! numeric equality. On top of them this module builds dense univariate
//! polynomials, rational functions (generating functions), small dense
//! matrices, the binomial factorisation machinery and partial fractions.

mod binomial;
mod matrix;
mod pfrac;
mod poly;
mod ratfunc;

pub use binomial::{
    binomial, binomial_factorize, binomial_multiple_extend, default_max_ell, BinomialCertificate,
    BinomialFactor, Extension,
};
pub use matrix::Matrix;
pub use pfrac::{partial_fractions, BinomialTerm, PartialFractions};
pub use poly::Polynomial;
pub use ratfunc::{minimal_recurrence, RationalFunction};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The reduced rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"a"` or `"a/b"` (optional sign on `a`, `b` positive).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {text:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad("invalid rational numerator"))?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad("denominator must be a positive integer"));
            }
            d.parse().map_err(|_| bad("invalid rational denominator"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Text form `a/b`, or `a` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// `|num| + |den|`, the size used to order candidate factors.
pub(crate) fn height(r: &Rational) -> BigInt {
    r.numer().abs() + r.denom()
}

/// `base^exp` for a signed exponent; `base` must be nonzero when `exp < 0`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn choose(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}
