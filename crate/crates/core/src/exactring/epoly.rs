use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Integer polynomial in `u`, `v` carrying Hodge-Deligne data
/// `Σ e^{p,q} u^p v^q`. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EPolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl EPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(p: u32, q: u32, c: impl Into<BigInt>) -> Self {
        let mut e = Self::zero();
        e.add_term(p, q, c.into());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, BigInt)>) -> Self {
        let mut e = Self::zero();
        for (p, q, c) in terms {
            e.add_term(p, q, c);
        }
        e
    }

    /// Polynomial in `t = uv` from its coefficients, lowest degree first.
    pub fn in_uv(coeffs: &[i64]) -> Self {
        let mut e = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            e.add_term(k as u32, k as u32, BigInt::from(c));
        }
        e
    }

    /// `(uv)^k`.
    pub fn uv_power(k: u32) -> Self {
        Self::monomial(k, k, 1)
    }

    /// `(uv - 1)^k`.
    pub fn uv_minus_one_power(k: u32) -> Self {
        let base = Self::in_uv(&[-1, 1]);
        (0..k).fold(Self::one(), |acc, _| &acc * &base)
    }

    pub fn add_term(&mut self, p: u32, q: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((p, q)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(p, q));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: u32, q: u32) -> BigInt {
        self.terms.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.terms.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree in `u` and `v`; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(p, q)| p + q).max()
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((p, q), c) in &self.terms {
            acc += Rational::from_integer(c.clone()) * pow(u, *p) * pow(v, *q);
        }
        acc
    }

    /// The Euler characteristic `E(1, 1)`.
    pub fn euler(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a + c)
    }

    /// `(uv)^d E(u^{-1}, v^{-1})`, or `None` if some term has degree above `d`.
    pub fn dual(&self, d: u32) -> Option<Self> {
        let mut out = Self::zero();
        for ((p, q), c) in &self.terms {
            if *p > d || *q > d {
                return None;
            }
            out.add_term(d - p, d - q, c.clone());
        }
        Some(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(p, q, c)| (p, q, c * k)))
    }

    /// `E(u, 1)` as coefficients in `u`, lowest degree first.
    pub fn at_v_one(&self) -> Vec<BigInt> {
        let deg = self.terms.keys().map(|&(p, _)| p).max().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); deg + 1];
        for ((p, _), c) in &self.terms {
            out[*p as usize] += c;
        }
        out
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

impl Add for &EPolynomial {
    type Output = EPolynomial;
    fn add(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = self.clone();
        for (p, q, c) in rhs.terms() {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl Sub for &EPolynomial {
    type Output = EPolynomial;
    fn sub(self, rhs: &EPolynomial) -> EPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &EPolynomial {
    type Output = EPolynomial;
    fn neg(self) -> EPolynomial {
        EPolynomial::from_terms(self.terms().map(|(p, q, c)| (p, q, -c)))
    }
}

impl Mul for &EPolynomial {
    type Output = EPolynomial;
    fn mul(self, rhs: &EPolynomial) -> EPolynomial {
        let mut out = EPolynomial::zero();
        for (p1, q1, c1) in self.terms() {
            for (p2, q2, c2) in rhs.terms() {
                out.add_term(p1 + p2, q1 + q2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for EPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((p, q), c) in self.terms.iter().rev() {
            let mono = match (p, q) {
                (0, 0) => String::new(),
                _ if p == q => power("uv", *p, true),
                _ => format!("{}{}", power("u", *p, false), power("v", *q, false)),
            };
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

fn power(var: &str, k: u32, paren: bool) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ if paren => format!("({var})^{k}"),
        _ => format!("{var}^{k}"),
    }
}

/// Writes `± |c| mono` with the usual elisions of unit coefficients.
pub(crate) fn write_term(f: &mut impl fmt::Write, c: &BigInt, mono: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let a = c.abs();
    if mono.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}{mono}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn arithmetic() {
        let a = EPolynomial::in_uv(&[1, 1]);
        let sq = &a * &a;
        assert_eq!(sq, EPolynomial::in_uv(&[1, 2, 1]));
        assert!((&sq - &sq).is_zero());
        assert_eq!(EPolynomial::uv_minus_one_power(2), EPolynomial::in_uv(&[1, -2, 1]));
        assert_eq!(sq.euler(), BigInt::from(4));
    }

    #[test]
    fn duality_and_eval() {
        let k3 = EPolynomial::from_terms([
            (0, 0, 1.into()),
            (2, 0, 1.into()),
            (0, 2, 1.into()),
            (1, 1, 20.into()),
            (2, 2, 1.into()),
        ]);
        assert_eq!(k3.dual(2).unwrap(), k3);
        assert_eq!(k3.eval(&int(1), &int(1)), int(24));
        let u = EPolynomial::monomial(1, 0, 1);
        assert_eq!(u.dual(1).unwrap(), EPolynomial::monomial(0, 1, 1));
        assert!(u.dual(0).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(EPolynomial::in_uv(&[1, -2, 1]).to_string(), "(uv)^2 - 2uv + 1");
        assert_eq!(EPolynomial::monomial(2, 0, -3).to_string(), "-3u^2");
        assert_eq!(EPolynomial::zero().to_string(), "0");
    }
}
