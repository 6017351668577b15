use num_traits::{One, Signed, Zero};

use super::cyclotomic::{cyclotomic_factors, CyclotomicMultiset};
use super::epoly::EPolynomial;
use super::fraction::{add_unreduced, reduce_fraction, StringyFraction};
use super::ring::RingElement;
use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, int, Rational};

/// One summand `E · Π_j (uv - 1)/((uv)^{a_j + 1} - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: EPolynomial,
    pub discrepancies: Vec<Rational>,
}

/// A stringy sum before the common-denominator collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSum {
    terms: Vec<Term>,
    dim: u32,
}

impl TermSum {
    pub fn new(dim: u32, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            for a in &t.discrepancies {
                if *a <= int(-1) {
                    return Err(Error::LogTerminalViolation(a.clone()));
                }
            }
        }
        Ok(Self { terms, dim })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Least `N` with every `N (a_j + 1)` integral.
    pub fn root_index(&self) -> Result<u64> {
        let shifted: Vec<Rational> = self
            .terms
            .iter()
            .flat_map(|t| t.discrepancies.iter().map(|a| a + Rational::one()))
            .collect();
        denominator_lcm(&shifted).ok_or_else(|| Error::Unsupported("root index overflow".into()))
    }

    /// Collapses the sum into a single reduced fraction at the least root index.
    pub fn to_fraction(&self) -> Result<StringyFraction> {
        let n = self.root_index()?;
        self.to_fraction_at(n)
    }

    /// As [`TermSum::to_fraction`], at a root index that is a multiple of the least one.
    pub fn to_fraction_at(&self, n: u64) -> Result<StringyFraction> {
        let base = CyclotomicMultiset::z_power_minus_one(n)?;
        let mut parts = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            let mut num_factors = CyclotomicMultiset::new();
            let mut den = CyclotomicMultiset::new();
            for a in &t.discrepancies {
                num_factors = num_factors.union(&base);
                den = den.union(&cyclotomic_factors(&(a + Rational::one()), n)?);
            }
            // cancel (uv - 1) factors against the denominators first
            let common = intersect(&num_factors, &den);
            let num_factors = num_factors.quotient(&common);
            let den = den.quotient(&common);
            let mut num = RingElement::from_epoly(&t.coeff, n);
            if !num_factors.is_empty() {
                num = num.mul_z_dense(&num_factors.product_poly());
            }
            parts.push(StringyFraction::unreduced(num, den));
        }
        if parts.is_empty() {
            return Ok(StringyFraction::zero(n));
        }
        Ok(reduce_fraction(&add_unreduced(&parts)?))
    }

    /// `Σ E(1, 1) Π_j 1/(a_j + 1)`.
    pub fn euler_limit(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut term = Rational::from_integer(t.coeff.euler());
            for a in &t.discrepancies {
                let b = a + Rational::one();
                if !b.is_positive() {
                    return Err(Error::LogTerminalViolation(a.clone()));
                }
                term /= b;
            }
            acc += term;
        }
        Ok(acc)
    }
}

fn intersect(a: &CyclotomicMultiset, b: &CyclotomicMultiset) -> CyclotomicMultiset {
    let mut out = CyclotomicMultiset::new();
    for (m, e) in a.iter() {
        out.insert(m, e.min(b.multiplicity(m)));
    }
    out
}

/// Free-function form of [`TermSum::euler_limit`].
pub fn euler_limit(t: &TermSum) -> Result<Rational> {
    t.euler_limit()
}
