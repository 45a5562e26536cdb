//! Linear recurrence sequences `u_{n+k} = a_1 u_{n+k-1} + ... + a_k u_n`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{
    binomial_multiple_extend, default_max_ell, partial_fractions, BinomialCertificate,
    Polynomial, Rational, RationalFunction,
};
use crate::seqexpr::{binomial_term_expr, SeqExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lrs {
    coeffs: Vec<Rational>,
    init: Vec<Rational>,
}

/// Result of the poly-rationality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRatVerdict {
    pub is_polyrat: bool,
    /// Binomial factorisation of the extended denominator when poly-rational.
    pub certificate: Option<BinomialCertificate>,
    /// The factor with no binomial multiple otherwise.
    pub witness: Option<Polynomial>,
    /// Exponent bound the search used.
    pub max_ell: usize,
}

impl Lrs {
    pub fn new(coeffs: Vec<Rational>, init: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != init.len() {
            return Err(Error::invalid(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                init.len()
            )));
        }
        Ok(Lrs { coeffs, init })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn terms(&self, n: usize) -> Vec<Rational> {
        let k = self.order();
        let mut out: Vec<Rational> = self.init.iter().take(n).cloned().collect();
        while out.len() < n {
            let m = out.len();
            let v = (1..=k).map(|i| &self.coeffs[i - 1] * &out[m - i]).sum();
            out.push(v);
        }
        out
    }

    pub fn eval(&self, n: usize) -> Rational {
        self.terms(n + 1).pop().expect("n + 1 terms")
    }

    /// `x^k - a_1 x^(k-1) - ... - a_k`.
    pub fn char_poly(&self) -> Polynomial {
        let k = self.order();
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        for (i, a) in self.coeffs.iter().enumerate() {
            c[k - 1 - i] = -a;
        }
        Polynomial::new(c)
    }

    /// `1 - a_1 x - ... - a_k x^k`, the reversed characteristic polynomial.
    fn reversed_char_poly(&self) -> Polynomial {
        let mut c = vec![Rational::one()];
        c.extend(self.coeffs.iter().map(|a| -a));
        Polynomial::new(c)
    }

    /// The reduced generating function.
    pub fn to_series(&self) -> RationalFunction {
        let q = self.reversed_char_poly();
        let p = (&Polynomial::new(self.init.clone()) * &q).truncate(self.order());
        RationalFunction::new(p, q).expect("reversed characteristic polynomial has constant term 1")
    }

    /// A recurrence for `f`, of order `max(deg Q, deg P + 1)`.
    pub fn from_series(f: &RationalFunction) -> Lrs {
        let dq = f.den().degree().unwrap_or(0);
        let k = match f.num().degree() {
            Some(dp) => dq.max(dp + 1),
            None => dq,
        };
        let coeffs = (1..=k).map(|i| -f.den().coeff(i)).collect();
        Lrs {
            coeffs,
            init: f.expand(k),
        }
    }

    /// Poly-rational iff the reduced generating function has a binomial
    /// multiple denominator with exponents bounded by `max_ell`.
    pub fn classify_polyrat(&self, max_ell: Option<usize>) -> PolyRatVerdict {
        classify_series(&self.to_series(), max_ell)
    }

    /// Poly-rational expression for the sequence.
    pub fn to_expr(&self, max_ell: Option<usize>) -> Result<SeqExpr> {
        series_to_expr(&self.to_series(), max_ell)
    }
}

/// Poly-rationality of a generating function, through its reduced form.
pub fn classify_series(f: &RationalFunction, max_ell: Option<usize>) -> PolyRatVerdict {
    let f = f.reduced();
    let bound = max_ell.unwrap_or_else(|| default_max_ell(f.den().degree().unwrap_or(0)));
    match binomial_multiple_extend(&f, Some(bound)) {
        Ok(ext) => PolyRatVerdict {
            is_polyrat: true,
            certificate: Some(ext.certificate),
            witness: None,
            max_ell: bound,
        },
        Err(Error::NotPolyRational { witness, max_ell }) => PolyRatVerdict {
            is_polyrat: false,
            certificate: None,
            witness: Some(witness),
            max_ell,
        },
        Err(e) => unreachable!("reduced series cannot fail extension otherwise: {e}"),
    }
}

/// Extension to a binomial-power denominator, partial fractions, one
/// expression per term, and a finite-support prefix for the polynomial part.
pub fn series_to_expr(f: &RationalFunction, max_ell: Option<usize>) -> Result<SeqExpr> {
    let ext = binomial_multiple_extend(f, max_ell)?;
    let pf = partial_fractions(&ext.function, &ext.certificate)?;
    let mut parts = Vec::with_capacity(pf.terms.len() + 1);
    if !pf.polynomial.is_zero() {
        parts.push(SeqExpr::Fin(pf.polynomial.coeffs().to_vec()));
    }
    for t in &pf.terms {
        parts.push(binomial_term_expr(&t.numerator, &t.lambda, t.ell, t.k)?);
    }
    Ok(SeqExpr::sum_all(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, BinomialFactor};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn lrs(a: &[i64], u: &[i64]) -> Lrs {
        Lrs::new(ints(a), ints(u)).unwrap()
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(n), Polynomial::from_ints(d)).unwrap()
    }

    #[test]
    fn fibonacci() {
        let f = lrs(&[1, 1], &[0, 1]);
        assert_eq!(f.terms(8), ints(&[0, 1, 1, 2, 3, 5, 8, 13]));
        assert_eq!(f.eval(7), int(13));
        assert_eq!(f.char_poly(), Polynomial::from_ints(&[-1, -1, 1]));
        assert_eq!(f.to_series().to_string(), "x/(1 - x - x^2)");
        let v = f.classify_polyrat(None);
        assert!(!v.is_polyrat);
        assert_eq!(v.witness, Some(Polynomial::from_ints(&[1, -1, -1])));
        assert!(matches!(f.to_expr(None), Err(Error::NotPolyRational { .. })));
        assert_eq!(Lrs::from_series(&f.to_series()), f);
    }

    #[test]
    fn order_zero() {
        let z = lrs(&[], &[]);
        assert_eq!(z.terms(3), ints(&[0, 0, 0]));
        assert_eq!(z.char_poly(), Polynomial::one());
        assert_eq!(z.to_series(), RationalFunction::zero());
        assert_eq!(lrs(&[2, 1], &[0, 0]).to_series(), RationalFunction::zero());
        assert_eq!(Lrs::from_series(&RationalFunction::zero()).order(), 0);
    }

    #[test]
    fn geometric_and_constant() {
        assert_eq!(lrs(&[5], &[5]).to_series().to_string(), "5/(1 - 5x)");
        let c = Lrs::from_series(&RationalFunction::one());
        assert_eq!(c, lrs(&[0], &[1]));
    }

    #[test]
    fn concatenation_as_recurrence() {
        let f = rf(&[0, 10], &[1, -5, -3, 15]);
        let l = Lrs::from_series(&f);
        assert_eq!(l.order(), 3);
        let f1 = |n: usize| if n % 2 == 0 { int(2) * int(3).pow(n as i32 / 2) } else { int(0) };
        let f2 = |n: usize| int(5).pow(n as i32 + 1);
        let t = l.terms(11);
        for (n, v) in t.iter().enumerate() {
            let conv: Rational = (1..=n).map(|i| f1(i - 1) * f2(n - i)).sum();
            assert_eq!(*v, conv);
        }
        assert_eq!(l.to_series(), f);
    }

    #[test]
    fn polyrat_verdicts() {
        let v = lrs(&[0, 2], &[1, 0]).classify_polyrat(None);
        assert!(v.is_polyrat);
        assert_eq!(
            v.certificate.unwrap().factors,
            vec![BinomialFactor::new(int(2), 2, 1)]
        );
        let v = lrs(&[2, -1], &[0, 1]).classify_polyrat(None);
        assert_eq!(
            v.certificate.unwrap().factors,
            vec![BinomialFactor::new(int(1), 1, 2)]
        );
    }

    #[test]
    fn redundant_presentation_gives_same_verdict() {
        // geometric 2^n padded with the spurious Fibonacci-like eigenvalues
        // (x^2 - x - 1)(x - 2) = x^3 - 3x^2 + x + 2
        let padded = lrs(&[3, -1, -2], &[1, 2, 4]);
        assert_eq!(padded.terms(10), lrs(&[2], &[1]).terms(10));
        assert!(padded.classify_polyrat(None).is_polyrat);
    }

    #[test]
    fn expressions() {
        let n = lrs(&[2, -1], &[0, 1]).to_expr(None).unwrap();
        assert_eq!(n.eval(6).unwrap(), ints(&[0, 1, 2, 3, 4, 5]));
        assert!(n.is_polyrat());
        let f1 = lrs(&[0, 3], &[2, 0]).to_expr(None).unwrap();
        assert_eq!(f1.eval(5).unwrap(), ints(&[2, 0, 6, 0, 18]));
        let g = lrs(&[5], &[5]).to_expr(None).unwrap();
        assert_eq!(g.eval(12).unwrap(), SeqExpr::geo(int(5), int(5)).eval(12).unwrap());
        // polynomial part: 1, 1, 3, 3, 3, ...
        let shifted = series_to_expr(&rf(&[1, 0, 2], &[1, -1]), None).unwrap();
        assert_eq!(shifted.eval(5).unwrap(), ints(&[1, 1, 3, 3, 3]));
    }

    #[test]
    fn mismatched_lengths() {
        assert!(Lrs::new(ints(&[1]), ints(&[])).is_err());
    }
}
