//! Taylor expansion of `f(u, 1)` around `u = 1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::fraction::StringyFraction;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Coefficients of `f(u, 1)` in powers of `(u - 1)`, orders `0..=order`.
///
/// With `v = 1` the root variable is `z = u^{1/N}`; the expansion is carried
/// out in `δ = z - 1` and then composed with `δ = (1 + ε)^{1/N} - 1`.
pub fn series_expand_u(f: &StringyFraction, order: usize) -> Result<Vec<Rational>> {
    let n = f.root_index();
    // numerator as a Laurent polynomial in z
    let mut num: BTreeMap<i64, BigInt> = BTreeMap::new();
    for (m, c) in f.numerator().terms() {
        let e = m.c + n as i64 * m.a as i64;
        *num.entry(e).or_insert_with(BigInt::zero) += c;
    }
    num.retain(|_, c| !c.is_zero());
    let mut den: BTreeMap<i64, BigInt> = f
        .denominator()
        .product_poly()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, c))
        .collect();
    // clear negative powers by moving them into the denominator
    if let Some((&lo, _)) = num.first_key_value() {
        if lo < 0 {
            num = num.into_iter().map(|(e, c)| (e - lo, c)).collect();
            den = den.into_iter().map(|(e, c)| (e - lo, c)).collect();
        }
    }
    let den_val = multiplicity_at_one(f);
    let need = den_val + order;
    let p = taylor_shift(&num, need);
    let q = taylor_shift(&den, need);
    let pv = p.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
    if num.is_empty() {
        return Ok(vec![Rational::zero(); order + 1]);
    }
    if pv < den_val {
        return Err(Error::LogTerminalViolation(int(-1)));
    }
    // g(δ) = (p / δ^v) / (q / δ^v), q[v] != 0
    let pp: Vec<Rational> = p[den_val..].iter().map(|c| Rational::from_integer(c.clone())).collect();
    let qq: Vec<Rational> = q[den_val..].iter().map(|c| Rational::from_integer(c.clone())).collect();
    let g = series_div(&pp, &qq, order);
    if n == 1 {
        return Ok(g);
    }
    let delta = root_minus_one(n, order);
    Ok(compose(&g, &delta, order))
}

fn multiplicity_at_one(f: &StringyFraction) -> usize {
    f.denominator().multiplicity(1) as usize
}

/// Coefficients of `P(1 + δ)` up to `δ^k`, `k <= need`.
fn taylor_shift(p: &BTreeMap<i64, BigInt>, need: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); need + 1];
    for (&e, c) in p {
        debug_assert!(e >= 0);
        let e = e as u64;
        let mut binom = BigInt::one();
        for (k, slot) in out.iter_mut().enumerate() {
            if k as u64 > e {
                break;
            }
            if k > 0 {
                binom = binom * BigInt::from(e - k as u64 + 1) / BigInt::from(k as u64);
            }
            *slot += c * &binom;
        }
    }
    out
}

fn series_div(p: &[Rational], q: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for k in 0..=order {
        let mut acc = p.get(k).cloned().unwrap_or_default();
        for j in 1..=k {
            if let Some(qj) = q.get(j) {
                acc -= qj * &out[k - j];
            }
        }
        out[k] = acc / &q[0];
    }
    out
}

/// `(1 + ε)^{1/n} - 1` up to `ε^order`.
fn root_minus_one(n: u64, order: usize) -> Vec<Rational> {
    let alpha = Rational::new(BigInt::one(), BigInt::from(n));
    let mut out = vec![Rational::zero(); order + 1];
    let mut binom = Rational::one();
    for k in 1..=order {
        binom = binom * (&alpha - int(k as i64 - 1)) / int(k as i64);
        out[k] = binom.clone();
    }
    out
}

fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn compose(g: &[Rational], delta: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    let mut power = vec![Rational::zero(); order + 1];
    power[0] = Rational::one();
    for gi in g.iter().take(order + 1) {
        for (o, p) in out.iter_mut().zip(&power) {
            *o += gi * p;
        }
        power = series_mul(&power, delta, order);
    }
    out
}
