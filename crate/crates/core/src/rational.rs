//! Exact rational scalars.
//!
//! `Rational` is always kept in lowest terms with a positive denominator;
//! `num_rational::BigRational` maintains that invariant on construction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = parse_bigint(num)?;
    let den: BigInt = parse_bigint(den)?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub(crate) fn parse_bigint(s: &str) -> Result<BigInt> {
    // BigInt's FromStr accepts a leading '+', and digits only otherwise.
    if s.is_empty() || s.len() > 4096 {
        return Err(Error::parse(format!("bad integer {s:?}")));
    }
    s.parse::<BigInt>().map_err(|_| Error::parse(format!("bad integer {s:?}")))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Least common multiple of the denominators, as a machine integer.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<u64> {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(v.denom());
    }
    l.to_u64()
}

/// `r * n` if it is an integer.
pub(crate) fn scaled_integer(r: &Rational, n: u64) -> Option<BigInt> {
    let s = r * Rational::from_integer(BigInt::from(n));
    if s.is_integer() {
        Some(s.to_integer())
    } else {
        None
    }
}
