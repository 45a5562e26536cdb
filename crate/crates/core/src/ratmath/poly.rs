use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c * x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for zero and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Reduction modulo `x^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `p(x^ell)`.
    pub fn inflate(&self, ell: usize) -> Self {
        assert!(ell >= 1, "inflate exponent must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * ell + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * ell] = c.clone();
        }
        Polynomial { coeffs }
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Scales so the constant term is 1. Requires `p(0) != 0`.
    pub fn unit_constant(&self) -> Self {
        let c = self.constant_term();
        assert!(!c.is_zero(), "unit_constant needs a nonzero constant term");
        self.scale(&c.recip())
    }

    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dl = divisor
            .leading()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?
            .clone();
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &dl;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        match self.divmod(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    ///
    /// Coprimality is first tested modulo a few word-sized primes, which
    /// settles the common case without coefficient growth; otherwise the
    /// primitive remainder sequence over the integers is used.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let a = self.primitive_integer_coeffs();
        let b = other.primitive_integer_coeffs();
        if modular::coprime(&a, &b) {
            return Self::one();
        }
        let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        while !b.is_empty() {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = std::mem::replace(&mut b, r);
        }
        Self::new(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `modulus`, when they are coprime.
    pub fn inverse_mod(&self, modulus: &Polynomial) -> Option<Polynomial> {
        let (g, s, _) = self.ext_gcd(modulus);
        if g.is_one() {
            s.rem(modulus).ok()
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * other)
            .div_exact(&g)
            .expect("gcd divides the product")
            .monic()
    }

    pub fn are_coprime(&self, other: &Polynomial) -> bool {
        self.gcd(other).is_one()
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Yun's square-free decomposition: `self = c * prod(S_j^j)` with every
    /// `S_j` monic, square-free and pairwise coprime. Only nonconstant
    /// factors are returned, in increasing multiplicity.
    pub fn square_free_decomposition(&self) -> Vec<(Polynomial, usize)> {
        if self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let c = df.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).expect("gcd divides b");
            let nc = d.div_exact(&a).expect("gcd divides d");
            d = &nc - &nb.derivative();
            b = nb;
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Coefficients scaled to coprime integers (sign of the leading term kept).
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Distinct rational roots in ascending order.
    ///
    /// Real roots of the square-free part are isolated with a Sturm
    /// sequence and bisected until the interval is shorter than `1/lc^2`,
    /// where `lc` is the leading coefficient of the primitive integer form.
    /// A rational root has denominator dividing `lc`, so it is then the
    /// rational of least denominator in its interval, which is tested exactly.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        if self.is_constant() {
            return roots;
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            roots.push(Rational::zero());
        }
        let reduced = Polynomial::new(self.coeffs[lead_zeros..].to_vec());
        if reduced.is_constant() {
            return roots;
        }
        let sf = reduced
            .div_exact(&reduced.gcd(&reduced.derivative()))
            .expect("gcd divides");
        let ints = sf.primitive_integer_coeffs();
        if modular::rootless(&ints) {
            roots.sort();
            return roots;
        }
        let lc = Rational::from_integer(ints.last().expect("nonconstant").abs());
        let sf = Polynomial::new(ints.into_iter().map(Rational::from_integer).collect());
        let tol = (&lc * &lc).recip();
        let sturm = sturm_sequence(&sf);
        let variations = |x: &Rational| sign_variations(&sturm, x);
        let bound = sf
            .coeffs
            .iter()
            .map(|c| (c / &lc).abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
            + Rational::one();
        let mut stack = vec![(-bound.clone(), bound.clone(), variations(&-bound.clone()) - variations(&bound))];
        while let Some((lo, hi, n)) = stack.pop() {
            if n == 0 {
                continue;
            }
            if n == 1 {
                if let Some(r) = isolate_rational(&sf, lo, hi, &tol) {
                    roots.push(r);
                }
                continue;
            }
            // split away from roots so endpoints never vanish
            let mut mid = (&lo + &hi) / Rational::from_integer(2.into());
            let mut k = 3;
            while sf.eval(&mid).is_zero() {
                mid = &lo + (&hi - &lo) / Rational::from_integer(k.into());
                k += 1;
            }
            let vm = variations(&mid);
            stack.push((lo.clone(), mid.clone(), variations(&lo) - vm));
            stack.push((mid, hi.clone(), vm - variations(&hi)));
        }
        roots.sort();
        roots
    }

    /// `x^exp mod self`.
    pub fn x_pow_mod(&self, exp: usize) -> Result<Polynomial> {
        let mut acc = Self::one().rem(self)?;
        let mut base = Self::x().rem(self)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(self)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(self)?;
            }
        }
        Ok(acc)
    }

    /// `prod_i (c - alpha_i^ell)` over the roots `alpha_i` of `self`, as a
    /// monic polynomial in `c`. This is the resultant of `self` and
    /// `x^ell - c` up to a nonzero constant factor, computed as the
    /// characteristic polynomial of multiplication by `x^ell` in
    /// `Q[x]/(self)`.
    pub fn resultant_in_constant(&self, ell: usize) -> Result<Polynomial> {
        let d = self
            .degree()
            .ok_or_else(|| Error::domain("resultant of the zero polynomial"))?;
        if d == 0 {
            return Ok(Self::one());
        }
        let modulus = self.monic();
        let r = modulus.x_pow_mod(ell)?;
        let mut m = Matrix::zeros(d, d);
        let mut col = r;
        for j in 0..d {
            for i in 0..d {
                m.set(i, j, col.coeff(i));
            }
            col = col.shift_up(1).rem(&modulus)?;
        }
        Ok(m.charpoly())
    }
}

fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            return seq;
        }
        // positive rescaling keeps the signs and the coefficients small
        let ints = r.primitive_integer_coeffs();
        seq.push(-&Polynomial::new(ints.into_iter().map(Rational::from_integer).collect()));
    }
}

fn sign_variations(seq: &[Polynomial], x: &Rational) -> i64 {
    let mut last = 0;
    let mut count = 0;
    for p in seq {
        let s = p.eval(x);
        let sign = if s.is_positive() { 1 } else if s.is_negative() { -1 } else { 0 };
        if sign != 0 {
            if last != 0 && sign != last {
                count += 1;
            }
            last = sign;
        }
    }
    count
}

/// The unique root of square-free `p` in `(lo, hi)`, if it is rational.
fn isolate_rational(p: &Polynomial, mut lo: Rational, mut hi: Rational, tol: &Rational) -> Option<Rational> {
    let two = Rational::from_integer(2.into());
    let lo_sign = p.eval(&lo).is_positive();
    while &hi - &lo >= *tol {
        let mid = (&lo + &hi) / &two;
        let v = p.eval(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.is_positive() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = simplest_between(&lo, &hi);
    p.eval(&c).is_zero().then_some(c)
}

/// The rational of least denominator strictly between `lo < hi`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    let next = &fl + Rational::one();
    if next < *hi {
        // an integer lies inside; pick the one nearest zero
        if lo.is_negative() && hi.is_positive() {
            return Rational::zero();
        }
        return if hi.is_positive() { next } else { hi.ceil() - Rational::one() };
    }
    // lo and hi share the integer part fl (hi may equal fl + 1)
    let a = lo - &fl;
    let b = hi - &fl;
    if a.is_zero() {
        // (fl, fl + b): the simplest is fl + 1/m with the least m > 1/b
        let m = b.recip().floor() + Rational::one();
        return fl + m.recip();
    }
    fl + simplest_between(&b.recip(), &a.recip()).recip()
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            if i == 1 {
                f.write_str("x")?;
            } else {
                write!(f, "x^{i}")?;
            }
        }
        Ok(())
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` over the integers, trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}

mod modular {
    use num_bigint::BigInt;
    use num_traits::{ToPrimitive, Zero};

    const PRIMES: [u64; 4] = [2305843009213693951, 4294967291, 1000000007, 998244353];

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            e >>= 1;
        }
        acc
    }

    fn reduce(v: &[BigInt], p: u64) -> Vec<u64> {
        let m = BigInt::from(p);
        let mut out: Vec<u64> = v
            .iter()
            .map(|c| {
                let r = c % &m;
                let r = if r < BigInt::zero() { r + &m } else { r };
                r.to_u64().expect("reduced below the modulus")
            })
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Degree of the gcd over `Z/p`.
    fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
        while !b.is_empty() {
            let lb = inv(*b.last().expect("nonempty"), p);
            while a.len() >= b.len() {
                let q = mul(*a.last().expect("nonempty"), lb, p);
                let shift = a.len() - b.len();
                for (i, c) in b.iter().enumerate() {
                    let t = mul(q, *c, p);
                    a[i + shift] = (a[i + shift] + p - t) % p;
                }
                while a.last() == Some(&0) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    const ROOT_PRIMES: [u64; 12] = [
        2305843009213693951, 1000000007, 998244353, 4294967291, 4294967279, 4294967231,
        4294967197, 4294967189, 4294967161, 4294967143, 4294967111, 4294967087,
    ];

    // a * b mod m, all reduced, m monic of degree >= 1
    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + mul(*x, *y, p)) % p;
            }
        }
        let d = m.len() - 1;
        while r.len() > d {
            let q = r.pop().expect("nonempty");
            let shift = r.len() - d;
            for (i, c) in m[..d].iter().enumerate() {
                r[i + shift] = (r[i + shift] + p - mul(q, *c, p)) % p;
            }
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    /// True only if the integer polynomial has no rational root: a root
    /// `a/b` with `b` dividing the leading coefficient survives modulo
    /// every prime not dividing it.
    pub(super) fn rootless(f: &[BigInt]) -> bool {
        ROOT_PRIMES.iter().any(|&p| {
            let mut m = reduce(f, p);
            if m.len() != f.len() || m.len() < 2 {
                return false;
            }
            let li = inv(*m.last().expect("nonempty"), p);
            for c in m.iter_mut() {
                *c = mul(*c, li, p);
            }
            // x^p mod m
            let (mut acc, mut base, mut e) = (vec![1u64], mulmod(&[0, 1], &[1], &m, p), p);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &m, p);
                }
                base = mulmod(&base, &base, &m, p);
                e >>= 1;
            }
            acc.resize(acc.len().max(2), 0);
            acc[1] = (acc[1] + p - 1) % p;
            while acc.last() == Some(&0) {
                acc.pop();
            }
            !acc.is_empty() && gcd_degree(m, acc, p) == 0
        })
    }

    /// True only if the integer polynomials are coprime over the rationals.
    /// A prime not dividing either leading coefficient can only raise the
    /// degree of the gcd, so degree zero modulo it proves coprimality.
    pub(super) fn coprime(a: &[BigInt], b: &[BigInt]) -> bool {
        PRIMES.iter().any(|&p| {
            let (ra, rb) = (reduce(a, p), reduce(b, p));
            ra.len() == a.len() && rb.len() == b.len() && gcd_degree(ra, rb, p) == 0
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn divmod_difference_of_squares() {
        let (q, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_by_zero_is_domain_error() {
        assert!(matches!(
            p(&[1, 1]).divmod(&Polynomial::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gcd_up_to_unit() {
        // gcd(1 - x^2, 1 - x) = 1 - x, normalised to the monic x - 1.
        let g = p(&[1, 0, -1]).gcd(&p(&[1, -1]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(g.unit_constant(), p(&[1, -1]));
        assert!(p(&[1, 1]).are_coprime(&p(&[1, -1])));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, -3, 0, 2]);
        let b = p(&[2, 5, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn modular_root_filter() {
        let ints = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(modular::rootless(&ints(&[-2, 0, 0, 1])));
        assert!(!modular::rootless(&ints(&[2, -2, -1, 1])));
        assert!(!modular::rootless(&ints(&[1, -3, 2])));
    }

    #[test]
    fn rational_roots_exact() {
        // 2x^2 - 3x + 1 = (2x - 1)(x - 1)
        assert_eq!(p(&[1, -3, 2]).rational_roots(), vec![rat(1, 2), int(1)]);
        assert!(p(&[-1, -1, 1]).rational_roots().is_empty());
        assert_eq!(p(&[0, 0, 3, 3]).rational_roots(), vec![int(-1), int(0)]);
        let q = Polynomial::new(vec![rat(-9, 4), int(0), int(1)]);
        assert_eq!(q.rational_roots(), vec![rat(-3, 2), rat(3, 2)]);
        // (3x - 7)(5x + 2)(x^2 - 2), roots -2/5 and 7/3 plus two irrational
        let r = &(&p(&[-7, 3]) * &p(&[2, 5])) * &p(&[-2, 0, 1]);
        assert_eq!(r.rational_roots(), vec![rat(-2, 5), rat(7, 3)]);
        assert_eq!(p(&[-1, 0, 0, 1]).pow(2).rational_roots(), vec![int(1)]);
        assert_eq!(p(&[-3, 1]).rational_roots(), vec![int(3)]);
        assert_eq!(p(&[3, 1]).shift_up(2).rational_roots(), vec![int(-3), int(0)]);
        assert_eq!(p(&[-4, 3]).rational_roots(), vec![rat(4, 3)]);
        assert_eq!(p(&[9, -6, 1]).rational_roots(), vec![int(3)]);
        // bisection lands exactly on -1 first
        let s = &(&p(&[1, -2]) * &p(&[1, 1])) * &p(&[1, 3]);
        assert_eq!(s.monic().rational_roots(), vec![int(-1), rat(-1, 3), rat(1, 2)]);
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(2, 5));
        assert_eq!(simplest_between(&rat(-7, 2), &rat(-3, 1)), rat(-10, 3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(3, 2)), int(0));
        assert_eq!(simplest_between(&rat(5, 2), &rat(9, 2)), int(3));
        assert_eq!(simplest_between(&rat(-9, 2), &rat(-5, 2)), int(-3));
        assert_eq!(simplest_between(&int(2), &rat(5, 2)), rat(7, 3));
    }

    #[test]
    fn square_free_parts() {
        // (x - 1)^2 (x + 2)
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let sq = f.square_free_decomposition();
        assert_eq!(sq, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert!(p(&[5]).square_free_decomposition().is_empty());
    }

    #[test]
    fn inflate_and_xpow() {
        assert_eq!(p(&[1, -3]).inflate(2), p(&[1, 0, -3]));
        // x^4 mod (1 - 2x + 2x^2) is the constant -1/4
        let s = p(&[1, -2, 2]);
        assert_eq!(s.x_pow_mod(4).unwrap(), Polynomial::constant(rat(-1, 4)));
    }

    #[test]
    fn resultant_in_constant_collects_powers_of_roots() {
        // roots of (x - 2)(x + 3): squares are 4 and 9
        let s = p(&[-6, 1, 1]);
        let res = s.resultant_in_constant(2).unwrap();
        assert_eq!(res, &p(&[-4, 1]) * &p(&[-9, 1]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[1, -1, -1]).to_string(), "1 - x - x^2");
        assert_eq!(p(&[0, 10]).to_string(), "10x");
        assert_eq!(
            Polynomial::new(vec![rat(-25, 11), rat(-15, 11)]).to_string(),
            "-25/11 - (15/11)x"
        );
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
