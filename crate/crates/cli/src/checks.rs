//! The built-in verification suite over the shipped fixtures.

use std::str::FromStr;

use stringy_core::arcspace::{from_stringy, motivic_integral_nc};
use stringy_core::error::Error;
use stringy_core::exactring::EPolynomial;
use stringy_core::fixtures::{FANS, STRATA};
use stringy_core::rational::{int, rat};
use stringy_core::resolution::{
    check_duality, stringy_e, stringy_euler, stringy_hodge, virasoro_check, DivisorRecord, StrataKind,
    StratifiedResolutionData, StratumRecord, StringyResult,
};
use stringy_core::toricfan::{shed_volume, stringy_e_toric, support_function};
use stringy_core::Rational;

use crate::report::{Payload, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Duality,
    Euler,
    Polynomial,
    Gorenstein,
    Shed,
    Virasoro,
    ArcIdentity,
}

pub const ALL_CHECKS: &[Check] = &[
    Check::Duality,
    Check::Euler,
    Check::Polynomial,
    Check::Gorenstein,
    Check::Shed,
    Check::Virasoro,
    Check::ArcIdentity,
];

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Duality => "duality",
            Check::Euler => "euler",
            Check::Polynomial => "polynomial",
            Check::Gorenstein => "gorenstein",
            Check::Shed => "shed",
            Check::Virasoro => "virasoro",
            Check::ArcIdentity => "arc-identity",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_CHECKS
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// Stringy Euler numbers of the resolution fixtures, as `(name, p, q)`.
const EULER: &[(&str, i64, i64)] = &[
    ("a2_threefold", 5, 3),
    ("quadric_cone_d3", 6, 1),
    ("quadric_cone_d4", 16, 3),
    ("quadric_cone_d5", 15, 2),
    ("quadric_cone_d6", 36, 5),
    ("fano_cone_p2_3_1", 4, 1),
    ("fano_cone_p2_3_2", 5, 1),
    ("fano_cone_p1_2_3", 5, 1),
    ("fano_cone_p1xp1_2_1", 6, 1),
    ("fano_cone_p3_4_3", 7, 1),
    ("k3", 24, 1),
    ("elliptic_curve", 0, 1),
    ("point", 1, 1),
    ("a1_minimal", 2, 1),
    ("a1_blown_up", 2, 1),
];

const POLYNOMIAL: &[&str] = &[
    "quadric_cone_d3",
    "fano_cone_p2_3_1",
    "fano_cone_p1xp1_2_1",
    "k3",
    "elliptic_curve",
    "point",
    "a1_minimal",
    "a1_blown_up",
];

/// Fixtures for which the second-derivative identity is expected.
const CALABI_YAU: &[&str] = &["k3", "elliptic_curve", "point"];

const NOT_Q_GORENSTEIN: &[&str] = &["not_q_gorenstein"];

fn resolution_fixtures(report: &mut Report, tag: &str) -> Vec<(&'static str, bool, StratifiedResolutionData, StringyResult)> {
    let mut out = Vec::new();
    for f in STRATA {
        match f.load().and_then(|d| stringy_e(&d).map(|r| (d, r))) {
            Ok((d, r)) => out.push((f.name, f.projective, d, r)),
            Err(e) => report.check(format!("{tag}/{}", f.name), false, Payload::Text(e.to_string())),
        }
    }
    out
}

fn check_duality_all(report: &mut Report, box_cap: u64) {
    for (name, projective, _, r) in resolution_fixtures(report, "duality") {
        let key = format!("duality/{name}");
        if projective {
            let ok = check_duality(&r);
            report.check(key, ok, Payload::Bool(ok));
        } else {
            report.push(key, Status::Skipped, Payload::Text("not projective".into()));
        }
    }
    for f in FANS {
        let key = format!("duality/fan/{}", f.name);
        if !f.complete {
            report.push(key, Status::Skipped, Payload::Text("fan is not complete".into()));
            continue;
        }
        match f.load().and_then(|fan| stringy_e_toric(&fan, box_cap)) {
            Ok(r) => {
                let ok = check_duality(&r);
                report.check(key, ok, Payload::Bool(ok));
            }
            Err(e) => report.check(key, false, Payload::Text(e.to_string())),
        }
    }
}

fn check_euler(report: &mut Report) {
    for (name, _, d, r) in resolution_fixtures(report, "euler") {
        let key = format!("euler/{name}");
        let limit = stringy_euler(&d);
        let at_one = r.fraction.evaluate_at(&int(1), &int(1));
        let expected = EULER.iter().find(|e| e.0 == name).map(|e| rat(e.1, e.2));
        match (limit, at_one) {
            (Ok(a), Ok(b)) => {
                let ok = a == b && expected.as_ref().is_none_or(|x| *x == a);
                report.check(key, ok, Payload::Pair(a, expected.unwrap_or(b)));
            }
            (Err(e), _) | (_, Err(e)) => report.check(key, false, Payload::Text(e.to_string())),
        }
    }
}

fn check_polynomial(report: &mut Report) {
    for (name, projective, _, r) in resolution_fixtures(report, "polynomial") {
        let key = format!("polynomial/{name}");
        let expected = POLYNOMIAL.contains(&name);
        let got = r.fraction.is_polynomial();
        if got != expected {
            report.check(key, false, Payload::Bool(got));
            continue;
        }
        match stringy_hodge(&r) {
            Ok(h) if !projective => report.reported(key, Payload::Hodge(h)),
            Ok(h) => {
                let anomalies = h.anomalies();
                let ok = anomalies.is_empty();
                let payload = if ok { Payload::Hodge(h) } else { Payload::Text(anomalies.join("; ")) };
                report.check(key, ok, payload);
            }
            Err(e) => report.check(key, matches!(e, Error::StringyHodgeDoNotExist(_)), Payload::Text(e.to_string())),
        }
    }
}

fn check_gorenstein(report: &mut Report, box_cap: u64) {
    for f in FANS {
        let key = format!("gorenstein/{}", f.name);
        let fan = match f.load() {
            Ok(fan) => fan,
            Err(e) => {
                report.check(key, false, Payload::Text(e.to_string()));
                continue;
            }
        };
        match support_function(&fan) {
            Err(e @ Error::NotQGorenstein { .. }) => {
                report.check(key, NOT_Q_GORENSTEIN.contains(&f.name), Payload::Text(e.to_string()))
            }
            Err(e) => report.check(key, false, Payload::Text(e.to_string())),
            Ok(_) if NOT_Q_GORENSTEIN.contains(&f.name) => {
                report.check(key, false, Payload::Text("expected a non-Q-Gorenstein fan".into()))
            }
            Ok(sf) if sf.root_index != 1 => {
                report.reported(key, Payload::Text(format!("Q-Gorenstein, index {}", sf.root_index)))
            }
            Ok(_) => match stringy_e_toric(&fan, box_cap) {
                Ok(r) => {
                    let f = &r.fraction;
                    let pure = f.numerator().terms().all(|(m, _)| m.a == 0 && m.b == 0);
                    let ok = f.is_polynomial() && f.root_index() == 1 && pure;
                    report.check(key, ok, Payload::Fraction(f.clone()));
                }
                Err(e) => report.check(key, false, Payload::Text(e.to_string())),
            },
        }
    }
}

fn check_shed(report: &mut Report, box_cap: u64) {
    for f in FANS {
        if NOT_Q_GORENSTEIN.contains(&f.name) {
            continue;
        }
        let key = format!("shed/{}", f.name);
        let run = || -> stringy_core::Result<(Rational, Rational)> {
            let fan = f.load()?;
            let e = stringy_e_toric(&fan, box_cap)?.e_st()?;
            Ok((e, Rational::from_integer(shed_volume(&fan)?)))
        };
        match run() {
            Ok((e, v)) => report.check(key, e == v, Payload::Pair(e, v)),
            Err(e) => report.check(key, false, Payload::Text(e.to_string())),
        }
    }
}

fn check_virasoro(report: &mut Report) {
    for (name, _, _, r) in resolution_fixtures(report, "virasoro") {
        let key = format!("virasoro/{name}");
        match virasoro_check(&r) {
            Ok(v) if CALABI_YAU.contains(&name) => report.check(key, v.equal, Payload::Pair(v.lhs, v.rhs)),
            Ok(v) => report.reported(key, Payload::Pair(v.lhs, v.rhs)),
            Err(Error::Unsupported(msg)) => report.push(key, Status::Skipped, Payload::Text(msg)),
            Err(e) => report.check(key, false, Payload::Text(e.to_string())),
        }
    }
}

fn check_arc(report: &mut Report) {
    for (name, _, d, r) in resolution_fixtures(report, "arc-identity") {
        let key = format!("arc-identity/{name}");
        let res = motivic_integral_nc(&d, d.dim)
            .and_then(|i| from_stringy(&r, d.dim).and_then(|s| i.same_value(&s)));
        match res {
            Ok(ok) => report.check(key, ok, Payload::None),
            Err(e) => report.check(key, false, Payload::Text(e.to_string())),
        }
    }
    let bad = StratifiedResolutionData {
        dim: 2,
        divisors: vec![DivisorRecord { name: "D".into(), a: int(-1) }],
        kind: StrataKind::Open,
        strata: vec![
            StratumRecord { j: vec![], e: EPolynomial::uv_power(2) },
            StratumRecord { j: vec![0], e: EPolynomial::in_uv(&[1, 1]) },
        ],
    };
    let rejected = matches!(motivic_integral_nc(&bad, 2), Err(Error::NotIntegrable(_)));
    report.check("arc-identity/not-integrable", rejected, Payload::Bool(rejected));
}

pub fn cmd_check(checks: &[Check], box_cap: u64) -> Report {
    let mut report = Report::new("check");
    for &c in checks {
        match c {
            Check::Duality => check_duality_all(&mut report, box_cap),
            Check::Euler => check_euler(&mut report),
            Check::Polynomial => check_polynomial(&mut report),
            Check::Gorenstein => check_gorenstein(&mut report, box_cap),
            Check::Shed => check_shed(&mut report, box_cap),
            Check::Virasoro => check_virasoro(&mut report),
            Check::ArcIdentity => check_arc(&mut report),
        }
    }
    report
}
