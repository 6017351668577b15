//! JSON file formats. Every parser rejects oversized or malformed input with
//! [`Error::Parse`]; every emitter is deterministic, so emitting a parsed
//! value reproduces the emitted bytes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::arcspace::{ArcElement, ArcFraction};
use crate::error::{Error, Result};
use crate::exactring::{CyclotomicMultiset, EPolynomial, RingElement, StringyFraction, MAX_CYCLOTOMIC_INDEX};
use crate::rational::{format_rational, parse_bigint, parse_rational, Rational};
use crate::resolution::{DivisorRecord, StrataKind, StratifiedResolutionData, StratumRecord};
use crate::toricfan::Fan;

pub const MAX_INPUT_BYTES: usize = 16 << 20;
pub const MAX_DIM: usize = 32;
pub const MAX_RAYS: usize = 4096;
pub const MAX_CONES: usize = 100_000;
pub const MAX_DIVISORS: usize = 4096;
/// Largest index set of a single stratum; strata conversion visits all subsets.
pub const MAX_STRATUM_SIZE: usize = 20;
pub const MAX_EXPONENT: u64 = 1 << 20;
pub const MAX_MULTIPLICITY: u64 = 4096;

fn perr(msg: impl Into<String>) -> Error {
    Error::parse(msg)
}

fn load(text: &str) -> Result<Value> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(perr(format!("input larger than {MAX_INPUT_BYTES} bytes")));
    }
    serde_json::from_str(text).map_err(|e| perr(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn tuple<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a [Value]> {
    let a = array(v, what)?;
    if a.len() != len {
        return Err(perr(format!("{what} must have {len} entries")));
    }
    Ok(a)
}

fn bigint(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => parse_bigint(&n.to_string()).map_err(|_| perr(format!("{what} must be an integer"))),
        _ => Err(perr(format!("{what} must be an integer"))),
    }
}

fn small(v: &Value, what: &str, lo: i64, hi: i64) -> Result<i64> {
    let x = bigint(v, what)?;
    x.to_i64()
        .filter(|x| (lo..=hi).contains(x))
        .ok_or_else(|| perr(format!("{what} out of range [{lo}, {hi}]")))
}

fn unsigned(v: &Value, what: &str, hi: u64) -> Result<u64> {
    Ok(small(v, what, 0, hi as i64)? as u64)
}

fn rational(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| perr(format!("{what}: {e}"))),
        Value::Number(_) => Ok(Rational::from_integer(bigint(v, what)?)),
        _ => Err(perr(format!("{what} must be a rational string \"p/q\""))),
    }
}

fn to_text(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn int_value(x: &BigInt) -> Value {
    // arbitrary-precision numbers keep big coefficients exact
    serde_json::from_str(&x.to_string()).expect("integer literal")
}

// ---------------------------------------------------------------- E-polynomials

pub fn epoly_from_value(v: &Value) -> Result<EPolynomial> {
    let mut out = EPolynomial::zero();
    for t in array(v, "E-polynomial")? {
        let t = tuple(t, 3, "E-polynomial term")?;
        let p = unsigned(&t[0], "exponent p", MAX_EXPONENT)? as u32;
        let q = unsigned(&t[1], "exponent q", MAX_EXPONENT)? as u32;
        out.add_term(p, q, bigint(&t[2], "coefficient")?);
    }
    Ok(out)
}

pub fn epoly_to_value(e: &EPolynomial) -> Value {
    Value::Array(e.terms().map(|(p, q, c)| json!([p, q, int_value(c)])).collect())
}

pub fn parse_epoly(text: &str) -> Result<EPolynomial> {
    epoly_from_value(&load(text)?)
}

pub fn emit_epoly(e: &EPolynomial) -> String {
    to_text(&epoly_to_value(e))
}

// ---------------------------------------------------------------- stringy fractions

fn multiset_from_value(v: &Value, what: &str) -> Result<CyclotomicMultiset> {
    let mut out = Vec::new();
    for t in array(v, what)? {
        let t = tuple(t, 2, what)?;
        let m = unsigned(&t[0], "cyclotomic index", MAX_CYCLOTOMIC_INDEX)?;
        let e = unsigned(&t[1], "multiplicity", MAX_MULTIPLICITY)?;
        if m == 0 {
            return Err(perr("cyclotomic index must be positive"));
        }
        out.push((m, e as u32));
    }
    CyclotomicMultiset::from_factors(out).map_err(|e| perr(e.to_string()))
}

pub fn fraction_from_value(v: &Value) -> Result<StringyFraction> {
    let n = unsigned(field(v, "N")?, "N", MAX_EXPONENT)?;
    if n == 0 {
        return Err(perr("N must be positive"));
    }
    let mut numer = RingElement::zero(n);
    for t in array(field(v, "num")?, "num")? {
        let t = tuple(t, 4, "numerator term")?;
        let a = unsigned(&t[0], "u exponent", MAX_EXPONENT)? as u32;
        let b = unsigned(&t[1], "v exponent", MAX_EXPONENT)? as u32;
        let lim = MAX_EXPONENT as i64;
        let c = small(&t[2], "z exponent", -lim, lim)?;
        numer.add_monomial(a, b, c, bigint(&t[3], "coefficient")?);
    }
    let den = multiset_from_value(field(v, "den")?, "den")?;
    Ok(StringyFraction::new(numer, den))
}

pub fn fraction_to_value(f: &StringyFraction) -> Value {
    let num: Vec<Value> = f.numerator().terms().map(|(m, c)| json!([m.a, m.b, m.c, int_value(c)])).collect();
    let den: Vec<Value> = f.denominator().iter().map(|(m, e)| json!([m, e])).collect();
    json!({ "N": f.root_index(), "num": num, "den": den })
}

pub fn parse_fraction(text: &str) -> Result<StringyFraction> {
    fraction_from_value(&load(text)?)
}

pub fn emit_fraction(f: &StringyFraction) -> String {
    to_text(&fraction_to_value(f))
}

// ---------------------------------------------------------------- strata files

pub fn strata_from_value(v: &Value) -> Result<StratifiedResolutionData> {
    let dim = unsigned(field(v, "dim")?, "dim", MAX_DIM as u64)? as u32;
    let divs = array(field(v, "divisors")?, "divisors")?;
    if divs.len() > MAX_DIVISORS {
        return Err(perr(format!("more than {MAX_DIVISORS} divisors")));
    }
    let mut divisors = Vec::with_capacity(divs.len());
    for d in divs {
        let name = match d.get("name") {
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(perr("divisor name must be a string")),
            None => format!("D{}", divisors.len() + 1),
        };
        divisors.push(DivisorRecord { name, a: rational(field(d, "a")?, "discrepancy")? });
    }
    let kind = match v.get("kind").map(|k| k.as_str()) {
        None | Some(Some("open")) => StrataKind::Open,
        Some(Some("closed")) => StrataKind::Closed,
        _ => return Err(perr("kind must be \"open\" or \"closed\"")),
    };
    let mut strata = Vec::new();
    for s in array(field(v, "strata")?, "strata")? {
        let js = array(field(s, "J")?, "J")?;
        if js.len() > MAX_STRATUM_SIZE {
            return Err(perr(format!("stratum index set larger than {MAX_STRATUM_SIZE}")));
        }
        let j = js
            .iter()
            .map(|x| unsigned(x, "divisor index", MAX_DIVISORS as u64).map(|x| x as usize))
            .collect::<Result<Vec<_>>>()?;
        strata.push(StratumRecord { j, e: epoly_from_value(field(s, "E")?)? });
    }
    Ok(StratifiedResolutionData { dim, divisors, kind, strata })
}

pub fn strata_to_value(d: &StratifiedResolutionData) -> Value {
    let divisors: Vec<Value> = d
        .divisors
        .iter()
        .map(|x| json!({ "name": x.name, "a": format_rational(&x.a) }))
        .collect();
    let strata: Vec<Value> = d
        .strata
        .iter()
        .map(|s| json!({ "J": s.j, "E": epoly_to_value(&s.e) }))
        .collect();
    json!({ "dim": d.dim, "divisors": divisors, "kind": d.kind.as_str(), "strata": strata })
}

pub fn parse_strata(text: &str) -> Result<StratifiedResolutionData> {
    strata_from_value(&load(text)?)
}

pub fn emit_strata(d: &StratifiedResolutionData) -> String {
    to_text(&strata_to_value(d))
}

// ---------------------------------------------------------------- fan files

pub fn fan_from_value(v: &Value) -> Result<Fan> {
    let dim = unsigned(field(v, "dim")?, "dim", MAX_DIM as u64)? as usize;
    let rays_v = array(field(v, "rays")?, "rays")?;
    if rays_v.len() > MAX_RAYS {
        return Err(perr(format!("more than {MAX_RAYS} rays")));
    }
    let mut rays = Vec::with_capacity(rays_v.len());
    for r in rays_v {
        let coords = array(r, "ray")?;
        if coords.len() > MAX_DIM {
            return Err(perr("ray has too many coordinates"));
        }
        rays.push(coords.iter().map(|x| bigint(x, "ray coordinate")).collect::<Result<Vec<_>>>()?);
    }
    let cones_v = array(field(v, "max_cones")?, "max_cones")?;
    if cones_v.len() > MAX_CONES {
        return Err(perr(format!("more than {MAX_CONES} cones")));
    }
    let mut cones = Vec::with_capacity(cones_v.len());
    for c in cones_v {
        let ids = array(c, "cone")?;
        if ids.len() > MAX_RAYS {
            return Err(perr("cone lists too many rays"));
        }
        cones.push(
            ids.iter()
                .map(|x| unsigned(x, "ray index", MAX_RAYS as u64).map(|x| x as usize))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Fan::new(dim, rays, cones))
}

pub fn fan_to_value(f: &Fan) -> Value {
    let rays: Vec<Value> = f.rays().iter().map(|r| Value::Array(r.iter().map(int_value).collect())).collect();
    let cones: Vec<Value> = f.max_cones().iter().map(|c| json!(c.rays())).collect();
    json!({ "dim": f.dim(), "rays": rays, "max_cones": cones })
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    fan_from_value(&load(text)?)
}

pub fn emit_fan(f: &Fan) -> String {
    to_text(&fan_to_value(f))
}

// ---------------------------------------------------------------- arc fractions

pub fn arc_fraction_from_value(v: &Value) -> Result<ArcFraction> {
    let m = unsigned(field(v, "M")?, "M", MAX_EXPONENT)?;
    if m == 0 {
        return Err(perr("M must be positive"));
    }
    let lim = MAX_EXPONENT as i64;
    let mut numer = ArcElement::zero();
    for t in array(field(v, "num")?, "num")? {
        let t = tuple(t, 4, "numerator term")?;
        let tau = small(&t[0], "tau exponent", -lim, lim)?;
        let p = small(&t[1], "theta numerator", -lim, lim)?;
        let q = small(&t[2], "theta denominator", 1, lim)?;
        numer.add_term(tau, Rational::new(p.into(), q.into()), bigint(&t[3], "coefficient")?);
    }
    let mut factors = Vec::new();
    for t in array(field(v, "den")?, "den")? {
        let t = tuple(t, 3, "denominator factor")?;
        let p = small(&t[0], "b numerator", 1, lim)?;
        let q = small(&t[1], "b denominator", 1, lim)?;
        let e = unsigned(&t[2], "multiplicity", MAX_MULTIPLICITY)? as u32;
        factors.push((Rational::new(p.into(), q.into()), e));
    }
    ArcFraction::from_binomial_form(m, &numer, &factors).map_err(|e| match e {
        Error::Parse(_) => e,
        other => perr(other.to_string()),
    })
}

pub fn arc_fraction_to_value(f: &ArcFraction) -> Value {
    let (numer, factors) = f.binomial_form();
    let num: Vec<Value> = numer
        .terms()
        .map(|(m, c)| json!([m.tau_exp, int_value(m.theta_exp.numer()), int_value(m.theta_exp.denom()), int_value(c)]))
        .collect();
    let den: Vec<Value> = factors
        .iter()
        .map(|(b, e)| json!([int_value(b.numer()), int_value(b.denom()), e]))
        .collect();
    json!({ "M": f.root_index(), "num": num, "den": den })
}

pub fn parse_arc_fraction(text: &str) -> Result<ArcFraction> {
    arc_fraction_from_value(&load(text)?)
}

pub fn emit_arc_fraction(f: &ArcFraction) -> String {
    to_text(&arc_fraction_to_value(f))
}

/// Rational values in reports are strings `"p/q"` (or `"p"`).
pub fn rational_to_value(r: &Rational) -> Value {
    Value::String(format_rational(r))
}
