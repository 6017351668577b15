//! The ring `Z[τ^{±1}][θ^Q]`, its non-Archimedean norm, cylinder volumes and
//! the exponential integral over a normal-crossing resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactring::{
    cyclotomic_poly, euler_phi, sparse_divexact, write_term, CyclotomicMultiset, EPolynomial, SparseLaurent,
    StringyFraction,
};
use crate::rational::{denominator_lcm, format_rational, scaled_integer, Rational};
use crate::resolution::{convert_strata, StrataKind, StratifiedResolutionData, StringyResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcMonomial {
    pub tau_exp: i64,
    pub theta_exp: Rational,
}

/// Finite `Z`-combination of monomials `τ^i θ^s`, `s` rational.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ArcElement {
    terms: BTreeMap<ArcMonomial, BigInt>,
}

impl ArcElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::zero(), 1)
    }

    pub fn monomial(tau_exp: i64, theta_exp: Rational, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero();
        out.add_term(tau_exp, theta_exp, c.into());
        out
    }

    pub fn theta_power(s: Rational) -> Self {
        Self::monomial(0, s, 1)
    }

    pub fn add_term(&mut self, tau_exp: i64, theta_exp: Rational, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = ArcMonomial { tau_exp, theta_exp };
        let slot = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ArcMonomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    /// Least common denominator of the θ exponents.
    fn theta_root_index(&self) -> Option<u64> {
        denominator_lcm(self.terms.keys().map(|m| &m.theta_exp))
    }
}

impl Add for &ArcElement {
    type Output = ArcElement;
    fn add(self, rhs: &ArcElement) -> ArcElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.tau_exp, m.theta_exp.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ArcElement {
    type Output = ArcElement;
    fn sub(self, rhs: &ArcElement) -> ArcElement {
        self + &(-rhs)
    }
}

impl Neg for &ArcElement {
    type Output = ArcElement;
    fn neg(self) -> ArcElement {
        ArcElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &ArcElement {
    type Output = ArcElement;
    fn mul(self, rhs: &ArcElement) -> ArcElement {
        let mut out = ArcElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.tau_exp + b.tau_exp, &a.theta_exp + &b.theta_exp, x * y);
            }
        }
        out
    }
}

fn write_monomial(m: &ArcMonomial) -> String {
    let mut s = String::new();
    match m.tau_exp {
        0 => {}
        1 => s.push('τ'),
        e => s.push_str(&format!("τ^{e}")),
    }
    if !m.theta_exp.is_zero() {
        if m.theta_exp.is_one() {
            s.push('θ');
        } else if m.theta_exp.is_integer() && m.theta_exp.is_positive() {
            s.push_str(&format!("θ^{}", m.theta_exp));
        } else {
            s.push_str(&format!("θ^({})", format_rational(&m.theta_exp)));
        }
    }
    s
}

impl fmt::Display for ArcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        // highest θ power first, like the E-polynomial display
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, c, &write_monomial(m), i == 0)?;
        }
        f.write_str(&out)
    }
}

/// `‖x‖ = e^{-value}`; the zero element has infinite log-norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogNorm {
    Finite(Rational),
    Infinite,
}

impl PartialOrd for LogNorm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogNorm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (LogNorm::Infinite, LogNorm::Infinite) => Equal,
            (LogNorm::Infinite, _) => Greater,
            (_, LogNorm::Infinite) => Less,
            (LogNorm::Finite(a), LogNorm::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &LogNorm {
    type Output = LogNorm;
    fn add(self, rhs: &LogNorm) -> LogNorm {
        match (self, rhs) {
            (LogNorm::Finite(a), LogNorm::Finite(b)) => LogNorm::Finite(a + b),
            _ => LogNorm::Infinite,
        }
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::Finite(v) => write!(f, "{}", format_rational(v)),
            LogNorm::Infinite => write!(f, "inf"),
        }
    }
}

/// Minimal θ exponent; τ has norm 1.
pub fn theta_lognorm(x: &ArcElement) -> LogNorm {
    match x.terms.keys().map(|m| &m.theta_exp).min() {
        Some(s) => LogNorm::Finite(s.clone()),
        None => LogNorm::Infinite,
    }
}

/// `B(τθ^{-1}, τ^{-1}θ^{-1}) · θ^{2n(l+1)}`.
pub fn cylinder_volume(b: &EPolynomial, l: u32, n: u32) -> ArcElement {
    let shift = 2 * i64::from(n) * (i64::from(l) + 1);
    let mut out = ArcElement::zero();
    for (p, q, c) in b.terms() {
        let theta = shift - i64::from(p) - i64::from(q);
        out.add_term(i64::from(p) - i64::from(q), Rational::from_integer(theta.into()), c.clone());
    }
    out
}

/// `vol · θ^{2k}`.
pub fn jacobian_transport(vol: &ArcElement, k: u32) -> ArcElement {
    vol * &ArcElement::theta_power(Rational::from_integer((2 * i64::from(k)).into()))
}

/// `num / den` with `den` a product of cyclotomics in `w = θ^{1/M}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcFraction {
    m: u64,
    /// τ exponent → Laurent polynomial in `w`.
    num: BTreeMap<i64, SparseLaurent>,
    den: CyclotomicMultiset,
}

impl ArcFraction {
    /// Builds and reduces; every θ exponent of `num` must lie in `(1/M) Z`.
    pub fn new(m: u64, num: &ArcElement, den: CyclotomicMultiset) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidData("θ root index must be positive".into()));
        }
        let mut comps: BTreeMap<i64, SparseLaurent> = BTreeMap::new();
        for (mono, c) in num.terms() {
            let e = scaled_integer(&mono.theta_exp, m)
                .and_then(|e| e.to_i64())
                .ok_or_else(|| Error::InvalidData(format!("θ exponent {} not in (1/{m})Z", mono.theta_exp)))?;
            let slot = comps.entry(mono.tau_exp).or_default().entry(e).or_insert_with(BigInt::zero);
            *slot += c;
        }
        Ok(Self::from_components(m, comps, den))
    }

    pub fn from_element(x: &ArcElement) -> Self {
        let m = x.theta_root_index().unwrap_or(1);
        Self::new(m, x, CyclotomicMultiset::new()).expect("root index covers every exponent")
    }

    fn from_components(m: u64, mut num: BTreeMap<i64, SparseLaurent>, den: CyclotomicMultiset) -> Self {
        for p in num.values_mut() {
            p.retain(|_, c| !c.is_zero());
        }
        num.retain(|_, p| !p.is_empty());
        let mut f = Self { m, num, den };
        f.reduce();
        f
    }

    fn reduce(&mut self) {
        if self.num.is_empty() {
            self.den = CyclotomicMultiset::new();
            return;
        }
        let mut den = CyclotomicMultiset::new();
        for (k, e) in self.den.iter() {
            let phi = cyclotomic_poly(k);
            let mut left = e;
            while left > 0 {
                let divided: Option<BTreeMap<i64, SparseLaurent>> = self
                    .num
                    .iter()
                    .map(|(t, p)| sparse_divexact(p, &phi).map(|q| (*t, q)))
                    .collect();
                match divided {
                    Some(q) => {
                        self.num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            den.insert(k, left);
        }
        self.den = den;
    }

    pub fn root_index(&self) -> u64 {
        self.m
    }

    pub fn denominator(&self) -> &CyclotomicMultiset {
        &self.den
    }

    pub fn numerator(&self) -> ArcElement {
        let mut out = ArcElement::zero();
        for (&t, p) in &self.num {
            for (&e, c) in p {
                out.add_term(t, Rational::new(e.into(), self.m.into()), c.clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Same value with `w = w'^k`.
    pub fn lift(&self, k: u64) -> Result<Self> {
        if k == 1 {
            return Ok(self.clone());
        }
        let ki = k as i64;
        let num = self
            .num
            .iter()
            .map(|(t, p)| (*t, p.iter().map(|(e, c)| (e * ki, c.clone())).collect()))
            .collect();
        Ok(Self::from_components(self.m * k, num, self.den.compose_power(k)?))
    }

    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let l = self.m.lcm(&other.m);
        Ok((self.lift(l / self.m)?, other.lift(l / other.m)?))
    }

    /// Equality of the represented functions, across root indices.
    pub fn same_value(&self, other: &Self) -> Result<bool> {
        let (a, b) = self.align(other)?;
        Ok(a == b)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let lcd = a.den.lcm(&b.den);
        let mut num: BTreeMap<i64, SparseLaurent> = BTreeMap::new();
        for f in [&a, &b] {
            let cof = lcd.quotient(&f.den).product_poly();
            for (t, p) in &f.num {
                let scaled = crate::exactring::sparse_mul_dense(p, &cof);
                let slot = num.entry(*t).or_default();
                for (e, c) in scaled {
                    *slot.entry(e).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        Ok(Self::from_components(a.m, num, lcd))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let mut num: BTreeMap<i64, SparseLaurent> = BTreeMap::new();
        for (t1, p1) in &a.num {
            for (t2, p2) in &b.num {
                let slot = num.entry(t1 + t2).or_default();
                for (e1, c1) in p1 {
                    for (e2, c2) in p2 {
                        *slot.entry(e1 + e2).or_insert_with(BigInt::zero) += c1 * c2;
                    }
                }
            }
        }
        Ok(Self::from_components(a.m, num, a.den.union(&b.den)))
    }

    /// Log-norm of the numerator; every cyclotomic factor has norm 1.
    pub fn lognorm(&self) -> LogNorm {
        let min = self.num.values().filter_map(|p| p.first_key_value().map(|(e, _)| *e)).min();
        match min {
            Some(e) => LogNorm::Finite(Rational::new(e.into(), self.m.into())),
            None => LogNorm::Infinite,
        }
    }

    /// Denominator as `Π (1 - θ^b)^mult` and the numerator adjusted to match,
    /// the shape used for serialization and display.
    pub fn binomial_form(&self) -> (ArcElement, Vec<(Rational, u32)>) {
        let (ks, extra) = self.den.cover_by_binomials();
        let mut num: BTreeMap<i64, SparseLaurent> = self.num.clone();
        if !extra.is_empty() {
            let poly = extra.product_poly();
            for p in num.values_mut() {
                *p = crate::exactring::sparse_mul_dense(p, &poly);
            }
        }
        let mut factors: BTreeMap<Rational, u32> = BTreeMap::new();
        for k in &ks {
            *factors.entry(Rational::new((*k).into(), self.m.into())).or_default() += 1;
        }
        // (w^k - 1) = -(1 - w^k)
        let sign = if ks.len() % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        let f = Self { m: self.m, num, den: CyclotomicMultiset::new() };
        (f.numerator().scale(&sign), factors.into_iter().collect())
    }

    /// Inverse of [`ArcFraction::binomial_form`].
    pub fn from_binomial_form(m: u64, num: &ArcElement, factors: &[(Rational, u32)]) -> Result<Self> {
        let mut den = CyclotomicMultiset::new();
        let mut count = 0u64;
        for (b, mult) in factors {
            let k = scaled_integer(b, m)
                .filter(|k| k.is_positive())
                .and_then(|k| k.to_u64())
                .ok_or_else(|| Error::InvalidData(format!("factor exponent {b} not in (1/{m})Z_{{>0}}")))?;
            let base = CyclotomicMultiset::z_power_minus_one(k)?;
            for _ in 0..*mult {
                den = den.union(&base);
            }
            count += u64::from(*mult);
        }
        let sign = if count % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        Self::new(m, &num.scale(&sign), den)
    }
}

impl fmt::Display for ArcFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, factors) = self.binomial_form();
        if factors.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = factors
            .iter()
            .map(|(b, k)| {
                let base = write_monomial(&ArcMonomial { tau_exp: 0, theta_exp: b.clone() });
                if *k == 1 {
                    format!("(1 - {base})")
                } else {
                    format!("(1 - {base})^{k}")
                }
            })
            .collect();
        write!(f, "({num}) / {}", den.join(""))
    }
}

/// `E_st(τθ^{-1}, τ^{-1}θ^{-1}) · θ^{2n}`: `uv ↦ θ^{-2}`, `z ↦ w^{-2}` with
/// `w = θ^{1/N}`.
pub fn from_stringy(result: &StringyResult, n: u32) -> Result<ArcFraction> {
    let frac: &StringyFraction = &result.fraction;
    let big_n = frac.root_index();
    let nn = big_n as i64;
    let shift = 2 * i64::from(n) * nn;
    let mut num: BTreeMap<i64, SparseLaurent> = BTreeMap::new();
    for (mono, c) in frac.numerator().terms() {
        let tau = i64::from(mono.a) - i64::from(mono.b);
        let w = shift - nn * (i64::from(mono.a) + i64::from(mono.b)) - 2 * mono.c;
        *num.entry(tau).or_default().entry(w).or_insert_with(BigInt::zero) += c;
    }
    // Φ_k(w^{-2}) = ε w^{-2φ(k)} Φ_k(w^2), ε = -1 only for k = 1
    let mut den = CyclotomicMultiset::new();
    let mut shift_w = 0i64;
    let mut negate = false;
    for (k, e) in frac.denominator().iter() {
        shift_w += 2 * euler_phi(k) as i64 * i64::from(e);
        if k == 1 && e % 2 == 1 {
            negate = !negate;
        }
        let mut single = CyclotomicMultiset::new();
        single.insert(k, e);
        den = den.union(&single.compose_power(2)?);
    }
    for p in num.values_mut() {
        *p = p
            .iter()
            .map(|(w, c)| (w + shift_w, if negate { -c } else { c.clone() }))
            .collect();
    }
    Ok(ArcFraction::from_components(big_n, num, den))
}

/// `Σ_J E(D_J°; τθ^{-1}, τ^{-1}θ^{-1}) Π_{j∈J} (θ^{-2} - 1) θ^{2b_j} / (1 - θ^{2b_j}) · θ^{2n}`
/// with `b_j = a_j + 1`; each factor is the geometric series over contact
/// orders `m >= 1` summed in closed form.
pub fn motivic_integral_nc(data: &StratifiedResolutionData, n: u32) -> Result<ArcFraction> {
    if let Some(d) = data.divisors.iter().find(|d| d.a <= -Rational::one()) {
        return Err(Error::NotIntegrable(d.a.clone()));
    }
    let v = crate::resolution::validate_data(data);
    if let Some(d) = v.diagnostics.first() {
        return Err(Error::InvalidData(d.to_string()));
    }
    let m = data.root_index()?;
    let mi = m as i64;
    let open = convert_strata(data, StrataKind::Open);
    let mut total = ArcFraction::from_components(m, BTreeMap::new(), CyclotomicMultiset::new());
    for (j, e) in open.strata_map() {
        if e.is_zero() {
            continue;
        }
        let mut term = ArcFraction::new(m, &cylinder_volume(&e, 0, n), CyclotomicMultiset::new())?;
        for &i in &j {
            let b = &data.divisors[i].a + Rational::one();
            let k = scaled_integer(&(b * Rational::from_integer(2.into())), m)
                .and_then(|k| k.to_i64())
                .ok_or_else(|| Error::Unsupported("θ exponent out of range".into()))?;
            // (w^{-2M} - 1) w^k / (1 - w^k) = (w^{k-2M} - w^k) / -(w^k - 1)
            let mut factor = ArcElement::zero();
            factor.add_term(0, Rational::new((k - 2 * mi).into(), m.into()), -BigInt::one());
            factor.add_term(0, Rational::new(k.into(), m.into()), BigInt::one());
            let f = ArcFraction::new(m, &factor, CyclotomicMultiset::z_power_minus_one(k as u64)?)?;
            term = term.try_mul(&f)?;
        }
        total = total.try_add(&term)?;
    }
    Ok(total)
}
