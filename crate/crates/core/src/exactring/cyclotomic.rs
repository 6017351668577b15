//! Cyclotomic polynomials in one variable and multisets of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{scaled_integer, Rational};

/// Largest cyclotomic index this crate will materialize.
pub const MAX_CYCLOTOMIC_INDEX: u64 = 1 << 20;

/// Dense univariate polynomial, lowest degree first.
pub(crate) type DensePoly = Vec<BigInt>;

/// Sparse Laurent polynomial in one variable: exponent -> nonzero coefficient.
pub(crate) type SparseLaurent = BTreeMap<i64, BigInt>;

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Multiplies `p` in place by `z^d - 1`.
fn mul_z_pow_minus_one(p: &mut DensePoly, d: usize) {
    let old = p.clone();
    p.resize(old.len() + d, BigInt::zero());
    for c in p.iter_mut() {
        *c = -&*c;
    }
    for (i, c) in old.into_iter().enumerate() {
        p[i + d] += c;
    }
}

/// Divides `p` exactly by `z^d - 1`; the caller guarantees divisibility.
fn div_z_pow_minus_one(p: &DensePoly, d: usize) -> DensePoly {
    let n = p.len() - d;
    let mut q = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let mut c = p[k + d].clone();
        if k + d < n {
            c += &q[k + d];
        }
        q[k] = c;
    }
    q
}

fn compute_cyclotomic(m: u64) -> DensePoly {
    let mut p: DensePoly = vec![BigInt::one()];
    let divs = divisors(m);
    for &d in &divs {
        if mobius(m / d) == 1 {
            mul_z_pow_minus_one(&mut p, d as usize);
        }
    }
    for &d in &divs {
        if mobius(m / d) == -1 {
            p = div_z_pow_minus_one(&p, d as usize);
        }
    }
    p
}

/// The m-th cyclotomic polynomial Φ_m(z), cached.
pub fn cyclotomic_poly(m: u64) -> Arc<DensePoly> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<DensePoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(m));
    cache.lock().unwrap().insert(m, p.clone());
    p
}

pub(crate) fn check_index(m: u64) -> Result<()> {
    if m == 0 || m > MAX_CYCLOTOMIC_INDEX {
        return Err(Error::CyclotomicIndexTooLarge(m));
    }
    Ok(())
}

pub(crate) fn dense_mul(a: &DensePoly, b: &DensePoly) -> DensePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of a sparse Laurent polynomial by a monic dense polynomial.
/// Returns `None` when the division leaves a remainder.
pub(crate) fn sparse_divexact(p: &SparseLaurent, divisor: &DensePoly) -> Option<SparseLaurent> {
    let dd = divisor.len() - 1;
    debug_assert!(divisor[dd].is_one());
    let (Some((&lo, _)), Some((&hi, _))) = (p.first_key_value(), p.last_key_value()) else {
        return Some(SparseLaurent::new());
    };
    let len = (hi - lo) as usize + 1;
    if len <= dd {
        return None;
    }
    let mut r = vec![BigInt::zero(); len];
    for (&e, c) in p {
        r[(e - lo) as usize] = c.clone();
    }
    let qlen = len - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = std::mem::take(&mut r[i + dd]);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in divisor[..dd].iter().enumerate() {
            if !dj.is_zero() {
                r[i + j] -= &c * dj;
            }
        }
        q[i] = c;
    }
    if r[..dd].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(
        q.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64 + lo, c))
            .collect(),
    )
}

pub(crate) fn sparse_mul_dense(p: &SparseLaurent, q: &DensePoly) -> SparseLaurent {
    let mut out = SparseLaurent::new();
    for (&e, c) in p {
        for (j, d) in q.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let slot = out.entry(e + j as i64).or_insert_with(BigInt::zero);
            *slot += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Factorizes `Φ_m(z^k)` into cyclotomics `Φ_j(z)`, `j | m k`.
pub(crate) fn compose_power(m: u64, k: u64) -> Result<BTreeMap<u64, u32>> {
    check_index(m * k)?;
    if k == 1 {
        return Ok(BTreeMap::from([(m, 1)]));
    }
    let base = cyclotomic_poly(m);
    let mut p: SparseLaurent = base
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64 * k as i64, c.clone()))
        .collect();
    let mut out = BTreeMap::new();
    for j in divisors(m * k) {
        let phi = cyclotomic_poly(j);
        while let Some(q) = sparse_divexact(&p, &phi) {
            *out.entry(j).or_insert(0) += 1;
            p = q;
        }
    }
    debug_assert!(p.len() == 1 && p.get(&0).is_some_and(|c| c.is_one()));
    Ok(out)
}

/// Finite multiset of cyclotomic polynomials `Φ_m` in a single variable.
/// The empty multiset is the constant 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicMultiset {
    factors: BTreeMap<u64, u32>,
}

impl CyclotomicMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (u64, u32)>) -> Result<Self> {
        let mut s = Self::new();
        for (m, mult) in factors {
            check_index(m)?;
            s.insert(m, mult);
        }
        Ok(s)
    }

    /// `z^k - 1 = Π_{m | k} Φ_m(z)`.
    pub fn z_power_minus_one(k: u64) -> Result<Self> {
        check_index(k)?;
        Ok(Self {
            factors: divisors(k).into_iter().map(|m| (m, 1)).collect(),
        })
    }

    pub fn insert(&mut self, m: u64, mult: u32) {
        if mult > 0 {
            *self.factors.entry(m).or_insert(0) += mult;
        }
    }

    /// Removes one copy of `Φ_m`; returns false when absent.
    pub fn remove_one(&mut self, m: u64) -> bool {
        match self.factors.get_mut(&m) {
            Some(e) if *e > 1 => {
                *e -= 1;
                true
            }
            Some(_) => {
                self.factors.remove(&m);
                true
            }
            None => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn multiplicity(&self, m: u64) -> u32 {
        self.factors.get(&m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&m, &e)| (m, e))
    }

    /// Multiset sum (product of the polynomials).
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            out.insert(m, e);
        }
        out
    }

    /// Per-factor maximum (least common multiple of the polynomials).
    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            let slot = out.factors.entry(m).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// `self / other`, assuming `other` is a sub-multiset.
    pub fn quotient(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, e) in other.iter() {
            for _ in 0..e {
                let removed = out.remove_one(m);
                debug_assert!(removed);
            }
        }
        out
    }

    pub fn degree(&self) -> u64 {
        self.iter().map(|(m, e)| euler_phi(m) * e as u64).sum()
    }

    /// Expanded product as a dense polynomial.
    pub fn product_poly(&self) -> DensePoly {
        let mut p: DensePoly = vec![BigInt::one()];
        for (m, e) in self.iter() {
            let phi = cyclotomic_poly(m);
            for _ in 0..e {
                p = dense_mul(&p, &phi);
            }
        }
        p
    }

    /// Value of the product at an integer point.
    pub fn eval_int(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::one();
        for (m, e) in self.iter() {
            let phi = cyclotomic_poly(m);
            let mut v = BigInt::zero();
            for c in phi.iter().rev() {
                v = v * z + c;
            }
            for _ in 0..e {
                acc *= &v;
            }
        }
        acc
    }

    /// Substitutes `z -> z^k` and refactors into cyclotomics.
    pub fn compose_power(&self, k: u64) -> Result<Self> {
        let mut out = Self::new();
        for (m, e) in self.iter() {
            for (j, f) in compose_power(m, k)? {
                out.insert(j, f * e);
            }
        }
        Ok(out)
    }

    /// Greedy cover by complete divisor sets: returns `(ks, extra)` with
    /// `Π_k (z^k - 1) = self * extra`. Used for display and for
    /// serializations written as products of `(1 - x^b)` factors.
    pub fn cover_by_binomials(&self) -> (Vec<u64>, Self) {
        let mut remaining = self.clone();
        let mut extra = Self::new();
        let mut ks = Vec::new();
        while let Some((&m, _)) = remaining.factors.last_key_value() {
            ks.push(m);
            for d in divisors(m) {
                if !remaining.remove_one(d) {
                    extra.insert(d, 1);
                }
            }
        }
        (ks, extra)
    }
}

/// Cyclotomic factorization of `z^{N b} - 1`: the denominator `(uv)^b - 1`
/// written in the root variable `z = (uv)^{1/N}`.
pub fn cyclotomic_factors(b: &Rational, n: u64) -> Result<CyclotomicMultiset> {
    let k = scaled_integer(b, n)
        .filter(|k| k.is_positive())
        .ok_or_else(|| Error::RootIndexTooSmall { n, b: b.clone() })?;
    let k: u64 = k.try_into().map_err(|_| Error::CyclotomicIndexTooLarge(u64::MAX))?;
    CyclotomicMultiset::z_power_minus_one(k)
}
