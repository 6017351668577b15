//! Human-readable renderings (plain text and LaTeX) of fractions, polynomials,
//! rationals and Hodge tables.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arcspace::{ArcFraction, LogNorm};
use crate::exactring::{cyclotomic_poly, write_term, EPolynomial, StringyFraction};
use crate::rational::{format_rational, Rational};
use crate::resolution::HodgeTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

fn power(base: &str, e: &Rational, paren: bool, style: Style) -> String {
    if e.is_zero() {
        return String::new();
    }
    if e.is_one() {
        return base.to_string();
    }
    let b = if paren { format!("({base})") } else { base.to_string() };
    match style {
        Style::Latex => format!("{b}^{{{}}}", format_rational(e)),
        Style::Text if e.is_integer() && e.is_positive() => format!("{b}^{e}"),
        Style::Text => format!("{b}^({})", format_rational(e)),
    }
}

/// `u^a v^b (uv)^{c/N}`.
fn uv_monomial(a: u32, b: u32, c: i64, n: u64, style: Style) -> String {
    let int = |k: u32| Rational::from_integer(k.into());
    let mut s = power("u", &int(a), false, style);
    s.push_str(&power("v", &int(b), false, style));
    s.push_str(&power("uv", &Rational::new(c.into(), n.into()), true, style));
    s
}

type Terms = Vec<((u32, u32, i64), BigInt)>;

fn poly(terms: &Terms, n: u64, style: Style) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut sorted = terms.clone();
    // by total uv-degree, highest first
    sorted.sort_by_key(|((a, b, c), _)| std::cmp::Reverse((i64::from(*a + *b) * n as i64 + 2 * c, *a)));
    let mut out = String::new();
    for (i, ((a, b, c), coeff)) in sorted.iter().enumerate() {
        write_term(&mut out, coeff, &uv_monomial(*a, *b, *c, n, style), i == 0).expect("string write");
    }
    out
}

fn numerator_terms(f: &StringyFraction) -> Terms {
    f.numerator().terms().map(|(m, c)| ((m.a, m.b, m.c), c.clone())).collect()
}

fn cyclotomic_string(m: u64, n: u64, style: Style) -> String {
    let terms: Terms = cyclotomic_poly(m)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| ((0, 0, i as i64), c.clone()))
        .collect();
    poly(&terms, n, style)
}

fn binomial_string(k: u64, n: u64, style: Style) -> String {
    let terms: Terms = vec![((0, 0, k as i64), BigInt::one()), ((0, 0, 0), -BigInt::one())];
    poly(&terms, n, style)
}

/// Denominator factors: products of `((uv)^b - 1)` when they cover it
/// exactly, otherwise the cyclotomic factors.
fn denominator_factors(f: &StringyFraction, style: Style) -> Vec<(String, u32)> {
    let n = f.root_index();
    let (ks, extra) = f.denominator().cover_by_binomials();
    let mut out: Vec<(String, u32)> = Vec::new();
    let mut push = |s: String| match out.iter_mut().find(|(t, _)| *t == s) {
        Some((_, k)) => *k += 1,
        None => out.push((s, 1)),
    };
    if extra.is_empty() {
        for k in ks {
            push(binomial_string(k, n, style));
        }
    } else {
        for (m, e) in f.denominator().iter() {
            for _ in 0..e {
                push(cyclotomic_string(m, n, style));
            }
        }
    }
    out
}

pub fn render_fraction(f: &StringyFraction, style: Style) -> String {
    let n = f.root_index();
    let terms = numerator_terms(f);
    if f.denominator().is_empty() || terms.is_empty() {
        return poly(&terms, n, style);
    }
    // pull out the common monomial, as in (uv)^2 (...) / (...)
    let ga = terms.iter().map(|((a, _, _), _)| *a).min().unwrap_or(0);
    let gb = terms.iter().map(|((_, b, _), _)| *b).min().unwrap_or(0);
    let gc = terms.iter().map(|((_, _, c), _)| *c).min().unwrap_or(0);
    let (prefix, rest) = if terms.len() > 1 {
        let rest: Terms = terms.iter().map(|((a, b, c), k)| ((a - ga, b - gb, c - gc), k.clone())).collect();
        (uv_monomial(ga, gb, gc, n, style), rest)
    } else {
        (String::new(), terms)
    };
    let num = poly(&rest, n, style);
    let factors = denominator_factors(f, style);
    match style {
        Style::Text => {
            let den = if factors.len() == 1 && factors[0].1 == 1 {
                format!("({})", factors[0].0)
            } else {
                let parts: String = factors
                    .iter()
                    .map(|(s, k)| if *k == 1 { format!("({s})") } else { format!("({s})^{k}") })
                    .collect();
                format!("({parts})")
            };
            let lead = if prefix.is_empty() { String::new() } else { format!("{prefix} ") };
            format!("{lead}({num}) / {den}")
        }
        Style::Latex => {
            let den = if factors.len() == 1 && factors[0].1 == 1 {
                factors[0].0.clone()
            } else {
                factors
                    .iter()
                    .map(|(s, k)| {
                        if *k == 1 {
                            format!("\\left({s}\\right)")
                        } else {
                            format!("\\left({s}\\right)^{{{k}}}")
                        }
                    })
                    .collect()
            };
            format!("{prefix}\\frac{{{num}}}{{{den}}}")
        }
    }
}

pub fn render_epoly(e: &EPolynomial, style: Style) -> String {
    let terms: Terms = e
        .terms()
        .map(|(p, q, c)| {
            let k = p.min(q);
            ((p - k, q - k, i64::from(k)), c.clone())
        })
        .collect();
    poly(&terms, 1, style)
}

pub fn render_rational(r: &Rational, style: Style) -> String {
    match style {
        Style::Latex if !r.is_integer() => {
            let sign = if r.is_negative() { "-" } else { "" };
            format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
        }
        _ => format_rational(r),
    }
}

pub fn render_lognorm(l: &LogNorm, style: Style) -> String {
    match (l, style) {
        (LogNorm::Infinite, Style::Latex) => "\\infty".into(),
        (LogNorm::Infinite, Style::Text) => "inf".into(),
        (LogNorm::Finite(v), _) => render_rational(v, style),
    }
}

pub fn render_hodge(h: &HodgeTable, style: Style) -> String {
    let maxp = h.entries().map(|(p, _, _)| p).max().unwrap_or(0).max(h.dim);
    let maxq = h.entries().map(|(_, q, _)| q).max().unwrap_or(0).max(h.dim);
    let mut out = String::new();
    match style {
        Style::Text => {
            let cells: Vec<Vec<String>> = (0..=maxp)
                .map(|p| (0..=maxq).map(|q| h.get(p, q).to_string()).collect())
                .collect();
            let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1).max(3);
            let _ = write!(out, "{:>5}", "");
            for q in 0..=maxq {
                let _ = write!(out, " {:>w$}", format!("q={q}"));
            }
            for (p, row) in cells.iter().enumerate() {
                let _ = write!(out, "\n{:>5}", format!("p={p}"));
                for c in row {
                    let _ = write!(out, " {c:>w$}");
                }
            }
        }
        Style::Latex => {
            let cols = "c".repeat(maxq as usize + 1);
            let _ = write!(out, "\\begin{{array}}{{c|{cols}}}\n p \\backslash q");
            for q in 0..=maxq {
                let _ = write!(out, " & {q}");
            }
            out.push_str(" \\\\ \\hline");
            for p in 0..=maxp {
                let _ = write!(out, "\n {p}");
                for q in 0..=maxq {
                    let _ = write!(out, " & {}", h.get(p, q));
                }
                out.push_str(" \\\\");
            }
            out.push_str("\n\\end{array}");
        }
    }
    out
}

pub fn render_arc_fraction(f: &ArcFraction, style: Style) -> String {
    match style {
        Style::Text => f.to_string(),
        Style::Latex => {
            let (num, factors) = f.binomial_form();
            let mut n = String::new();
            if num.is_zero() {
                n.push('0');
            }
            for (i, (m, c)) in num.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
                let mut mono = power("\\tau", &Rational::from_integer(m.tau_exp.into()), false, style);
                mono.push_str(&power("\\theta", &m.theta_exp, false, style));
                write_term(&mut n, c, &mono, i == 0).expect("string write");
            }
            if factors.is_empty() {
                return n;
            }
            let den: String = factors
                .iter()
                .map(|(b, k)| {
                    let base = format!("\\left(1 - {}\\right)", power("\\theta", b, false, style));
                    if *k == 1 {
                        base
                    } else {
                        format!("{base}^{{{k}}}")
                    }
                })
                .collect();
            format!("\\frac{{{n}}}{{{den}}}")
        }
    }
}
