use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::{cyclotomic_poly, CyclotomicMultiset};
use super::epoly::EPolynomial;
use super::ring::RingElement;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `num / den` with `num` in `Z[u, v, z^{±1}]/(uv - z^N)` and `den` a product
/// of cyclotomics in `z = (uv)^{1/N}`.
///
/// Values built through [`StringyFraction::new`] are reduced: no `Φ_m` of the
/// denominator divides the numerator. For a fixed root index the reduced form
/// is unique, so structural equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringyFraction {
    num: RingElement,
    den: CyclotomicMultiset,
}

impl StringyFraction {
    /// Reduced fraction `num / den`.
    pub fn new(num: RingElement, den: CyclotomicMultiset) -> Self {
        reduce_fraction(&Self::unreduced(num, den))
    }

    /// Fraction exactly as given, without cancellation.
    pub fn unreduced(num: RingElement, den: CyclotomicMultiset) -> Self {
        Self { num, den }
    }

    pub fn from_ring(num: RingElement) -> Self {
        Self { num, den: CyclotomicMultiset::new() }
    }

    pub fn from_epoly(e: &EPolynomial, n: u64) -> Self {
        Self::from_ring(RingElement::from_epoly(e, n))
    }

    pub fn zero(n: u64) -> Self {
        Self::from_ring(RingElement::zero(n))
    }

    pub fn one(n: u64) -> Self {
        Self::from_ring(RingElement::one(n))
    }

    pub fn root_index(&self) -> u64 {
        self.num.root_index()
    }

    pub fn numerator(&self) -> &RingElement {
        &self.num
    }

    pub fn denominator(&self) -> &CyclotomicMultiset {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_reduced(&self) -> bool {
        self.den
            .iter()
            .all(|(m, _)| self.num.divexact_z(&cyclotomic_poly(m)).is_none())
    }

    /// Same function at root index `N k` (substitutes `z = z'^k`).
    pub fn lift(&self, k: u64) -> Result<Self> {
        if k == 1 {
            return Ok(self.clone());
        }
        Ok(Self::new(self.num.lift(k), self.den.compose_power(k)?))
    }

    /// Brings both operands to the least common root index.
    pub fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let (n1, n2) = (self.root_index(), other.root_index());
        let l = n1.lcm(&n2);
        Ok((self.lift(l / n1)?, other.lift(l / n2)?))
    }

    /// Equality as functions of `u, v`, across root indices.
    pub fn same_function(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        Ok(a == b)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.root_index() != other.root_index() {
            let (a, b) = self.align(other)?;
            return a.try_add(&b);
        }
        Ok(reduce_fraction(&add_unreduced(&[self.clone(), other.clone()])?))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.root_index() != other.root_index() {
            let (a, b) = self.align(other)?;
            return a.try_mul(&b);
        }
        Ok(Self::new(self.num.try_mul(&other.num)?, self.den.union(&other.den)))
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// True iff this is a polynomial in `u, v` (no denominator and every
    /// `z`-exponent a nonnegative multiple of `N`).
    pub fn is_polynomial(&self) -> bool {
        let n = self.root_index() as i64;
        self.den.is_empty() && self.num.terms().all(|(m, _)| m.c >= 0 && m.c % n == 0)
    }

    /// The polynomial as an [`EPolynomial`], or `NotPolynomial`.
    pub fn as_epolynomial(&self) -> Result<EPolynomial> {
        if !self.den.is_empty() {
            let factors: Vec<String> = self
                .den
                .iter()
                .map(|(m, e)| if e == 1 { format!("Phi_{m}") } else { format!("Phi_{m}^{e}") })
                .collect();
            return Err(Error::NotPolynomial(format!("denominator {}", factors.join(" * "))));
        }
        let n = self.root_index() as i64;
        let mut out = EPolynomial::zero();
        for (m, c) in self.num.terms() {
            if m.c < 0 || m.c % n != 0 {
                return Err(Error::NotPolynomial(format!("residual power z^{} with N = {n}", m.c)));
            }
            let k = (m.c / n) as u32;
            out.add_term(m.a + k, m.b + k, c.clone());
        }
        Ok(out)
    }

    /// `(uv)^d f(u^{-1}, v^{-1})`, reduced.
    pub fn poincare_dual(&self, d: u32) -> Self {
        let n = self.root_index() as i64;
        let shift = n * d as i64 + self.den.degree() as i64;
        let sign = if self.den.multiplicity(1) % 2 == 1 { -1 } else { 1 };
        let mut num = RingElement::zero(self.root_index());
        for (m, c) in self.num.terms() {
            let c2 = shift - m.c - n * (m.a as i64 + m.b as i64);
            num.add_monomial(m.b, m.a, c2, c * sign);
        }
        // Cyclotomic factors are (anti)palindromic, so the denominator is
        // unchanged and the result stays reduced.
        Self { num, den: self.den.clone() }
    }

    /// Exact value at `(u0, v0)`. For `N > 1` only `u0 v0 ∈ {0, 1}` is
    /// supported, with the real root `z = u0 v0`.
    pub fn evaluate_at(&self, u0: &Rational, v0: &Rational) -> Result<Rational> {
        let n = self.root_index();
        let p = u0 * v0;
        let z = if n == 1 || p.is_zero() || p.is_one() {
            p
        } else {
            return Err(Error::UnsupportedEvaluation(n));
        };
        let den = eval_multiset(&self.den, &z);
        if den.is_zero() {
            return Err(Error::Pole);
        }
        let num = self.num.eval(u0, v0, &z).ok_or(Error::Pole)?;
        Ok(num / den)
    }
}

pub(crate) fn eval_multiset(den: &CyclotomicMultiset, z: &Rational) -> Rational {
    let mut acc = Rational::one();
    for (m, e) in den.iter() {
        let phi = cyclotomic_poly(m);
        let mut v = Rational::zero();
        for c in phi.iter().rev() {
            v = v * z + Rational::from_integer(c.clone());
        }
        for _ in 0..e {
            acc *= &v;
        }
    }
    acc
}

/// Cancels every cyclotomic factor of the denominator that divides the
/// numerator exactly.
pub fn reduce_fraction(f: &StringyFraction) -> StringyFraction {
    let mut num = f.num.clone();
    let mut den = CyclotomicMultiset::new();
    if num.is_zero() {
        return StringyFraction { num, den };
    }
    for (m, e) in f.den.iter() {
        let phi = cyclotomic_poly(m);
        let mut left = e;
        while left > 0 {
            match num.divexact_z(&phi) {
                Some(q) => {
                    num = q;
                    left -= 1;
                }
                None => break,
            }
        }
        den.insert(m, left);
    }
    StringyFraction { num, den }
}

/// Sum over a common denominator, without the final reduction.
pub(crate) fn add_unreduced(parts: &[StringyFraction]) -> Result<StringyFraction> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidData("empty sum".into()));
    };
    let n = first.root_index();
    let lcd = parts
        .iter()
        .fold(CyclotomicMultiset::new(), |acc, p| acc.lcm(&p.den));
    let mut num = RingElement::zero(n);
    for p in parts {
        if p.root_index() != n {
            return Err(Error::RootIndexMismatch(n, p.root_index()));
        }
        let cofactor = lcd.quotient(&p.den);
        let scaled = if cofactor.is_empty() {
            p.num.clone()
        } else {
            p.num.mul_z_dense(&cofactor.product_poly())
        };
        num = num.try_add(&scaled)?;
    }
    Ok(StringyFraction { num, den: lcd })
}

/// `(uv)^k` as a fraction at root index `n`.
pub fn uv_power(n: u64, k: u32) -> StringyFraction {
    StringyFraction::from_ring(RingElement::z_power(n, n as i64 * k as i64))
}

/// Integer constant at root index `n`.
pub fn constant(n: u64, c: impl Into<BigInt>) -> StringyFraction {
    StringyFraction::from_ring(RingElement::z_power(n, 0).scale(&c.into()))
}
