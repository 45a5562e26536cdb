//! Binomial factors `(1 - lambda x^ell)` of generating-function denominators.
//!
//! A rational series is poly-rational exactly when the roots of its reduced
//! denominator are roots of rational numbers. Such a denominator need not
//! itself be a product of binomials (`1 - 2x + 2x^2` is not), but it always
//! divides one (`(1 - 2x + 2x^2)(1 + 2x + 2x^2) = 1 + 4x^4`). This module
//! strips binomial factors greedily and, for what remains, searches for a
//! binomial multiple with exponent at most a bound `max_ell`.

use std::cmp::Reverse;

use num_traits::{Signed, Zero};

use super::{height, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `(1 - lambda x^ell)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinomialFactor {
    pub lambda: Rational,
    pub ell: usize,
    pub k: usize,
}

impl BinomialFactor {
    pub fn new(lambda: Rational, ell: usize, k: usize) -> Self {
        BinomialFactor { lambda, ell, k }
    }

    /// `1 - lambda x^ell`.
    pub fn base(&self) -> Polynomial {
        binomial(&self.lambda, self.ell)
    }

    pub fn power(&self) -> Polynomial {
        self.base().pow(self.k)
    }
}

/// A factorisation `q = residual * prod (1 - lambda_i x^ell_i)^k_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialCertificate {
    pub factors: Vec<BinomialFactor>,
    pub residual: Polynomial,
}

impl BinomialCertificate {
    /// Product of the binomial powers, without the residual.
    pub fn binomial_product(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::one(), |acc, f| &acc * &f.power())
    }

    /// `residual * prod(...)`, which equals the factorised polynomial.
    pub fn product(&self) -> Polynomial {
        &self.residual * &self.binomial_product()
    }

    /// True when the residual is the constant 1.
    pub fn is_complete(&self) -> bool {
        self.residual.is_one()
    }
}

/// `1 - lambda x^ell`.
pub fn binomial(lambda: &Rational, ell: usize) -> Polynomial {
    &Polynomial::one() - &Polynomial::monomial(lambda.clone(), ell)
}

/// The default exponent bound `2 d^2` (at least 1) for a denominator of
/// degree `d`.
pub fn default_max_ell(degree: usize) -> usize {
    (2 * degree * degree).max(1)
}

fn candidate_key(r: &Rational) -> (num_bigint::BigInt, bool) {
    (height(r), r.is_negative())
}

/// Values `lambda` such that `1 - lambda x^ell` divides `q`.
///
/// Writing `q(x) = sum_r x^r q_r(x^ell)`, the binomial divides `q` exactly
/// when `1/lambda` is a common root of all the `q_r`.
fn binomial_lambdas(q: &Polynomial, ell: usize) -> Vec<Rational> {
    let mut g = Polynomial::zero();
    for r in 0..ell {
        let part = Polynomial::new(q.coeffs().iter().skip(r).step_by(ell).cloned().collect());
        if part.is_zero() {
            continue;
        }
        g = g.gcd(&part);
        if g.is_one() {
            return vec![];
        }
    }
    let mut lambdas: Vec<Rational> = g
        .rational_roots()
        .into_iter()
        .filter(|m| !m.is_zero())
        .map(|m| m.recip())
        .collect();
    lambdas.sort_by_key(candidate_key);
    lambdas
}

/// Greedily strips binomial factors from `q`, longest exponent first.
///
/// Exponents `ell` run from `min(deg, max_ell)` down to 1; for each `ell`
/// candidates `lambda` are tried by ascending `|num| + |den|`, positive
/// before negative, dividing while divisible.
pub fn binomial_factorize(q: &Polynomial, max_ell: usize) -> Result<BinomialCertificate> {
    if q.is_zero() || q.constant_term().is_zero() {
        return Err(Error::domain(format!(
            "binomial factorisation needs q(0) != 0, got {q}"
        )));
    }
    let mut residual = q.clone();
    let mut factors: Vec<BinomialFactor> = Vec::new();
    let top = residual.degree().unwrap_or(0).min(max_ell);
    for ell in (1..=top).rev() {
        if residual.degree().unwrap_or(0) < ell {
            continue;
        }
        for lambda in binomial_lambdas(&residual, ell) {
            let b = binomial(&lambda, ell);
            let mut k = 0;
            while let Some(next) = residual.div_exact(&b) {
                residual = next;
                k += 1;
            }
            if k > 0 {
                push_merged(&mut factors, BinomialFactor::new(lambda, ell, k));
            }
        }
    }
    Ok(BinomialCertificate { factors, residual })
}

fn push_merged(factors: &mut Vec<BinomialFactor>, f: BinomialFactor) {
    match factors
        .iter_mut()
        .find(|g| g.lambda == f.lambda && g.ell == f.ell)
    {
        Some(g) => g.k += f.k,
        None => factors.push(f),
    }
}

/// A series rewritten over a denominator that is exactly a product of
/// binomial powers, with the certificate for that denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub function: RationalFunction,
    pub certificate: BinomialCertificate,
}

/// Splits a square-free `s` into pieces, each dividing a binomial
/// `1 - lambda x^ell` with `ell <= max_ell`. On failure returns the piece
/// for which no binomial multiple was found.
fn binomial_divisors(
    s: &Polynomial,
    max_ell: usize,
) -> std::result::Result<Vec<(Polynomial, Rational, usize)>, Polynomial> {
    if s.is_constant() {
        return Ok(vec![]);
    }
    let s = s.monic();
    let deg = s.degree().expect("nonconstant");
    let x = Polynomial::x();
    for ell in 1..=max_ell {
        let r = s.x_pow_mod(ell).expect("nonzero modulus");
        if r.is_constant() && !r.is_zero() {
            // s | x^ell - c, hence s | 1 - (1/c) x^ell
            return Ok(vec![(s, r.constant_term().recip(), ell)]);
        }
        let res = s.resultant_in_constant(ell).expect("nonzero modulus");
        for c in res.rational_roots() {
            if c.is_zero() {
                continue;
            }
            let target = &x.pow(ell) - &Polynomial::constant(c);
            let g = s.gcd(&target);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < deg {
                let rest = s.div_exact(&g).expect("gcd divides");
                let mut out = binomial_divisors(&g, max_ell)?;
                out.extend(binomial_divisors(&rest, max_ell)?);
                return Ok(out);
            }
        }
    }
    Err(s)
}

/// Rewrites `f` as `P'/Q'` with `Q'` a product of binomial powers.
///
/// Binomial factors of the reduced denominator are stripped first; every
/// square-free part `S_j` of the residual (multiplicity `j`) is then split
/// into pieces dividing some `1 - lambda x^ell`, and numerator and
/// denominator are multiplied by the cofactors raised to `j`. If some piece
/// has no binomial multiple with exponent `<= max_ell` the series is not
/// poly-rational up to that bound and the piece is returned as witness.
pub fn binomial_multiple_extend(
    f: &RationalFunction,
    max_ell: Option<usize>,
) -> Result<Extension> {
    let f = f.reduced();
    let max_ell = max_ell.unwrap_or_else(|| default_max_ell(f.den().degree().unwrap_or(0)));
    let cert = binomial_factorize(f.den(), max_ell)?;
    if cert.residual.is_constant() {
        return Ok(Extension {
            function: f,
            certificate: cert,
        });
    }
    let mut multiplier = Polynomial::one();
    let mut constructed = cert.factors.clone();
    let mut used_ell = max_ell;
    for (s, j) in cert.residual.square_free_decomposition() {
        let pieces = binomial_divisors(&s, max_ell).map_err(|w| Error::NotPolyRational {
            witness: w.unit_constant(),
            max_ell,
        })?;
        for (piece, lambda, ell) in pieces {
            let b = binomial(&lambda, ell);
            let cof = b.div_exact(&piece).expect("piece divides its binomial");
            multiplier = &multiplier * &cof.pow(j);
            used_ell = used_ell.max(ell);
            push_merged(&mut constructed, BinomialFactor::new(lambda, ell, j));
        }
    }
    let function =
        RationalFunction::unreduced(f.num() * &multiplier, f.den() * &multiplier)?;
    let refactored = binomial_factorize(function.den(), used_ell)?;
    let certificate = if refactored.is_complete() {
        refactored
    } else {
        constructed.sort_by_key(|b| (Reverse(b.ell), candidate_key(&b.lambda)));
        BinomialCertificate {
            factors: constructed,
            residual: Polynomial::one(),
        }
    };
    debug_assert_eq!(certificate.product(), *function.den());
    Ok(Extension {
        function,
        certificate,
    })
}
