use std::fmt;

use super::binomial::{BinomialCertificate, BinomialFactor};
use super::{rational_pow, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `numerator / (1 - lambda x^ell)^k` with `deg numerator < ell * k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTerm {
    pub numerator: Polynomial,
    pub lambda: Rational,
    pub ell: usize,
    pub k: usize,
}

impl BinomialTerm {
    pub fn denominator(&self) -> Polynomial {
        BinomialFactor::new(self.lambda.clone(), self.ell, self.k).power()
    }

    pub fn to_function(&self) -> RationalFunction {
        RationalFunction::unreduced(self.numerator.clone(), self.denominator())
            .expect("binomial powers have constant term 1")
    }
}

impl fmt::Display for BinomialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = BinomialFactor::new(self.lambda.clone(), self.ell, 1).base();
        write!(f, "({})/({base})", self.numerator)?;
        if self.k > 1 {
            write!(f, "^{}", self.k)?;
        }
        Ok(())
    }
}

/// `polynomial + sum(terms)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub polynomial: Polynomial,
    pub terms: Vec<BinomialTerm>,
}

impl PartialFractions {
    /// Sums the parts back over a common denominator.
    pub fn recombine(&self) -> RationalFunction {
        self.terms.iter().fold(
            RationalFunction::from_polynomial(self.polynomial.clone()),
            |acc, t| &acc + &t.to_function(),
        )
    }
}

/// Replaces the first pair of bases sharing a root by their common binomial
/// multiple `1 - mu x^L`, `L = lcm(ell_i, ell_j)`, multiplying `num` by the
/// cofactor. Returns false when the bases are pairwise coprime.
fn merge_one_pair(bases: &mut Vec<BinomialFactor>, num: &mut Polynomial) -> bool {
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            if bases[i].base().are_coprime(&bases[j].base()) {
                continue;
            }
            let (a, b) = (bases[i].clone(), bases[j].clone());
            let ell = num_integer::lcm(a.ell, b.ell);
            let mu = rational_pow(&a.lambda, (ell / a.ell) as i64);
            debug_assert_eq!(mu, rational_pow(&b.lambda, (ell / b.ell) as i64));
            let merged = BinomialFactor::new(mu, ell, a.k + b.k);
            let cof = merged
                .power()
                .div_exact(&(&a.power() * &b.power()))
                .expect("both bases divide the common binomial");
            *num = &*num * &cof;
            bases.remove(j);
            bases.remove(i);
            match bases
                .iter_mut()
                .find(|g| g.lambda == merged.lambda && g.ell == merged.ell)
            {
                Some(g) => g.k += merged.k,
                None => bases.push(merged),
            }
            return true;
        }
    }
    false
}

/// Decomposes `f`, whose denominator is certified as a product of binomial
/// powers, into a polynomial part plus one term per coprime binomial base.
pub fn partial_fractions(
    f: &RationalFunction,
    cert: &BinomialCertificate,
) -> Result<PartialFractions> {
    if !cert.is_complete() {
        return Err(Error::domain(format!(
            "partial fractions need a complete binomial certificate, residual is {}",
            cert.residual
        )));
    }
    if cert.product() != *f.den() {
        return Err(Error::domain(format!(
            "certificate product {} does not match denominator {}",
            cert.product(),
            f.den()
        )));
    }
    let mut bases = cert.factors.clone();
    let mut num = f.num().clone();
    while merge_one_pair(&mut bases, &mut num) {}

    let den = bases
        .iter()
        .fold(Polynomial::one(), |acc, b| &acc * &b.power());
    let (polynomial, rem) = num.divmod(&den)?;
    let mut terms = Vec::with_capacity(bases.len());
    for b in &bases {
        let d = b.power();
        let cofactor = den.div_exact(&d).expect("base power divides denominator");
        let inv = cofactor
            .inverse_mod(&d)
            .ok_or_else(|| Error::domain("binomial bases are not pairwise coprime"))?;
        let numerator = (&rem * &inv).rem(&d)?;
        if numerator.is_zero() {
            continue;
        }
        terms.push(BinomialTerm {
            numerator,
            lambda: b.lambda.clone(),
            ell: b.ell,
            k: b.k,
        });
    }
    Ok(PartialFractions { polynomial, terms })
}
