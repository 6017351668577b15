use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::{sparse_divexact, sparse_mul_dense, DensePoly, SparseLaurent};
use super::epoly::EPolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `u^a v^b z^c` with the relation `uv = z^N` fully applied, so `min(a, b) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalMonomial {
    pub a: u32,
    pub b: u32,
    pub c: i64,
}

impl NormalMonomial {
    pub fn normalize(a: u32, b: u32, c: i64, n: u64) -> Self {
        let m = a.min(b);
        Self {
            a: a - m,
            b: b - m,
            c: c + m as i64 * n as i64,
        }
    }
}

/// Element of `Z[u, v, z^{±1}] / (uv - z^N)`.
///
/// As a module over `Z[z^{±1}]` this ring is free on `1, u^a, v^b` (a, b ≥ 1),
/// so multiplication by a polynomial in `z` acts on each `(a, b)` component
/// separately; exact division by cyclotomics relies on that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    n: u64,
    terms: BTreeMap<NormalMonomial, BigInt>,
}

impl RingElement {
    pub fn zero(n: u64) -> Self {
        assert!(n > 0, "root index must be positive");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: u64) -> Self {
        Self::z_power(n, 0)
    }

    pub fn z_power(n: u64, c: i64) -> Self {
        let mut r = Self::zero(n);
        r.add_monomial(0, 0, c, BigInt::one());
        r
    }

    pub fn monomial(n: u64, a: u32, b: u32, c: i64, coeff: impl Into<BigInt>) -> Self {
        let mut r = Self::zero(n);
        r.add_monomial(a, b, c, coeff.into());
        r
    }

    pub fn from_epoly(e: &EPolynomial, n: u64) -> Self {
        let mut r = Self::zero(n);
        for (p, q, c) in e.terms() {
            r.add_monomial(p, q, 0, c.clone());
        }
        r
    }

    pub fn root_index(&self) -> u64 {
        self.n
    }

    pub fn add_monomial(&mut self, a: u32, b: u32, c: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = NormalMonomial::normalize(a, b, c, self.n);
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalMonomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| *m == NormalMonomial { a: 0, b: 0, c: 0 } && c.is_one())
    }

    /// Product; fails on mismatched root indices.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RootIndexMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_monomial(m1.a + m2.a, m1.b + m2.b, m1.c + m2.c, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RootIndexMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_monomial(m.a, m.b, m.c, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_monomial(m.a, m.b, m.c, c * k);
        }
        out
    }

    pub fn shift_z(&self, by: i64) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (NormalMonomial { c: m.c + by, ..*m }, c.clone()))
                .collect(),
        }
    }

    /// Components over `Z[z^{±1}]`, keyed by `(a, b)`.
    pub(crate) fn components(&self) -> BTreeMap<(u32, u32), SparseLaurent> {
        let mut out: BTreeMap<(u32, u32), SparseLaurent> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry((m.a, m.b)).or_default().insert(m.c, c.clone());
        }
        out
    }

    pub(crate) fn from_components(n: u64, comps: BTreeMap<(u32, u32), SparseLaurent>) -> Self {
        let terms = comps
            .into_iter()
            .flat_map(|((a, b), p)| {
                p.into_iter()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(c, coeff)| (NormalMonomial { a, b, c }, coeff))
            })
            .collect();
        Self { n, terms }
    }

    pub(crate) fn mul_z_dense(&self, p: &DensePoly) -> Self {
        let comps = self
            .components()
            .into_iter()
            .map(|(k, s)| (k, sparse_mul_dense(&s, p)))
            .collect();
        Self::from_components(self.n, comps)
    }

    /// Exact division by a monic polynomial in `z`, or `None`.
    pub(crate) fn divexact_z(&self, p: &DensePoly) -> Option<Self> {
        let mut comps = BTreeMap::new();
        for (k, s) in self.components() {
            comps.insert(k, sparse_divexact(&s, p)?);
        }
        Some(Self::from_components(self.n, comps))
    }

    /// Rewrites in the root variable `z'` with `z = z'^k` (root index `N k`).
    pub fn lift(&self, k: u64) -> Self {
        let mut out = Self::zero(self.n * k);
        for (m, c) in &self.terms {
            out.add_monomial(m.a, m.b, m.c * k as i64, c.clone());
        }
        out
    }

    /// Value at `(u, v, z)`. The caller is responsible for `z^N = uv`.
    pub fn eval(&self, u: &Rational, v: &Rational, z: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            if m.c < 0 && z.is_zero() {
                return None;
            }
            let zc = if m.c >= 0 {
                pow(z, m.c as u64)
            } else {
                pow(z, m.c.unsigned_abs()).recip()
            };
            acc += Rational::from_integer(c.clone()) * pow(u, m.a as u64) * pow(v, m.b as u64) * zc;
        }
        Some(acc)
    }

    pub fn min_z_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.c).min()
    }
}

fn pow(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

/// `ring_multiply` on two elements of the same root index.
pub fn ring_multiply(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    x.try_mul(y)
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("root index mismatch")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.scale(&BigInt::from(-1))
    }
}
