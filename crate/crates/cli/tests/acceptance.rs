//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines always print.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use stringy_core::arcspace::{from_stringy, motivic_integral_nc, theta_lognorm, ArcElement, LogNorm};
use stringy_core::exactring::{reduce_fraction, CyclotomicMultiset, EPolynomial, RingElement, StringyFraction};
use stringy_core::fixtures::{fan_fixture, strata_fixture, CREPANT_RAYS, FANS, REFINEMENTS, STRATA};
use stringy_core::io::{emit_fraction, parse_fraction};
use stringy_core::rational::{int, rat};
use stringy_core::resolution::{
    check_duality, cone_over_fano, convert_strata, stringy_e, stringy_e_closed_form, stringy_euler, stringy_hodge,
    verify_resolution_independence, virasoro_check, DivisorRecord, StrataKind, StratifiedResolutionData,
    StratumRecord, StringyResult,
};
use stringy_core::toricfan::{
    resolution_strata_from_subdivision, shed_volume, star_subdivide, stringy_e_toric, support_function, triangulate,
    triangulate_with_order, Fan, DEFAULT_BOX_CAP,
};
use stringy_core::{Error, Rational};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ------------------------------------------------------------------ oracles

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `Φ_m(s) = Π_{d | m} (s^d - 1)^{μ(m/d)}`.
fn cyclotomic_at(m: u64, s: &Rational) -> Rational {
    let mut out = int(1);
    for d in (1..=m).filter(|d| m % d == 0) {
        let f = pow(s, d as i64) - int(1);
        match mobius(m / d) {
            1 => out *= f,
            -1 => out /= f,
            _ => {}
        }
    }
    out
}

/// Value of a fraction at `u = s^N x`, `v = 1/x`, so `uv = s^N` and `z = s`.
fn fraction_at(f: &StringyFraction, s: &Rational, x: &Rational) -> Rational {
    let n = f.root_index() as i64;
    let u = pow(s, n) * x;
    let v = x.recip();
    let mut num = Rational::zero();
    for (m, c) in f.numerator().terms() {
        num += pow(&u, m.a.into()) * pow(&v, m.b.into()) * pow(s, m.c) * Rational::from_integer(c.clone());
    }
    let mut den = int(1);
    for (m, e) in f.denominator().iter() {
        den *= pow(&cyclotomic_at(m, s), e.into());
    }
    num / den
}

/// The defining sum over open strata, evaluated directly at the same point.
fn definition_at(data: &StratifiedResolutionData, n: u64, s: &Rational, x: &Rational) -> Rational {
    assert_eq!(data.kind, StrataKind::Open);
    let u = pow(s, n as i64) * x;
    let v = x.recip();
    let t = &u * &v;
    let mut total = Rational::zero();
    for st in &data.strata {
        let mut term = Rational::zero();
        for (p, q, c) in st.e.terms() {
            term += pow(&u, p.into()) * pow(&v, q.into()) * Rational::from_integer(c.clone());
        }
        for &j in &st.j {
            let e = (&data.divisors[j].a + int(1)) * int(n as i64);
            assert!(e.is_integer());
            let e: i64 = e.to_integer().try_into().unwrap();
            term *= (&t - int(1)) / (pow(s, e) - int(1));
        }
        total += term;
    }
    total
}

const SAMPLE_POINTS: &[(i64, i64, i64)] = &[(2, 1, 3), (3, 2, 5), (5, 7, 2), (-3, 4, 7)];

fn agrees_with_definition(data: &StratifiedResolutionData, f: &StringyFraction) -> bool {
    SAMPLE_POINTS.iter().all(|&(p, q, x)| {
        let s = rat(p, q);
        let x = int(x);
        fraction_at(f, &s, &x) == definition_at(data, f.root_index(), &s, &x)
    })
}

/// Polynomial in `uv` from coefficients, as a fraction with root index `n`
/// and `uv = z^n`.
fn uv_poly(coeffs: &[i64], n: u64) -> RingElement {
    let mut r = RingElement::zero(n);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            r.add_monomial(0, 0, i as i64 * n as i64, BigInt::from(c));
        }
    }
    r
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of coefficient vectors (lowest degree first).
fn poly_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let lead = *b.last().unwrap();
    let mut q = vec![0; a.len() + 1 - b.len()];
    for i in (0..q.len()).rev() {
        let c = rem[i + b.len() - 1] / lead;
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= c * y;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

fn binomial(k: usize) -> Vec<i64> {
    let mut v = vec![0; k + 1];
    v[0] = -1;
    v[k] = 1;
    v
}

fn epoly_uv(coeffs: &[i64]) -> EPolynomial {
    EPolynomial::in_uv(coeffs)
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // cofactor expansion; matrices here are at most 4x4
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Normalized volume of the region under the support function, from a
/// simplicial subdivision: each cell contributes `|det|` of its rays.
fn volume_oracle(fan: &Fan) -> BigInt {
    let t = triangulate(fan);
    t.max_cones()
        .iter()
        .filter(|c| c.len() == t.dim())
        .map(|c| det(&c.rays().iter().map(|&i| t.ray(i).clone()).collect::<Vec<_>>()).abs())
        .sum()
}

fn load_strata(name: &str) -> StratifiedResolutionData {
    strata_fixture(name).unwrap().load().unwrap()
}

fn load_fan(name: &str) -> Fan {
    fan_fixture(name).unwrap().load().unwrap()
}

fn bv(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&c| BigInt::from(c)).collect()
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stringy")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn item<'a>(report: &'a Value, name: &str) -> Option<&'a Value> {
    report["items"].as_array()?.iter().find(|i| i["name"] == name).map(|i| &i["payload"])
}

// ------------------------------------------------------------------ corpus

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_primitive(r: &mut ChaCha8Rng, d: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..d).map(|_| r.gen_range(-bound..=bound)).collect();
        if v.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            return v;
        }
    }
}

/// Random full-dimensional simplicial cones with index in `[2, 10^4]`.
fn random_simplicial_cones(seed: u64, count: usize) -> Vec<Fan> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = if out.len() % 3 == 2 { 4 } else { 3 };
        let bound = if d == 4 { 4 } else { 14 };
        let rays: Vec<Vec<i64>> = (0..d).map(|_| random_primitive(&mut r, d, bound)).collect();
        let m: Vec<Vec<BigInt>> = rays.iter().map(|x| bv(x)).collect();
        let idx = det(&m).abs();
        if idx < BigInt::from(2) || idx > BigInt::from(10_000) {
            continue;
        }
        out.push(Fan::new(d, m, vec![(0..d).collect()]));
    }
    out
}

/// Random Gorenstein simplicial cones: rays on the hyperplane `x_d = 1`.
fn random_gorenstein_cones(seed: u64, count: usize) -> Vec<Fan> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let rays: Vec<Vec<BigInt>> = (0..3)
            .map(|_| bv(&[r.gen_range(-6..=6), r.gen_range(-6..=6), 1]))
            .collect();
        let idx = det(&rays).abs();
        if idx.is_zero() || idx > BigInt::from(10_000) {
            continue;
        }
        out.push(Fan::new(3, rays, vec![vec![0, 1, 2]]));
    }
    out
}

/// Cone over a random lattice polygon at height one (vertices only).
fn random_polygon_cone(r: &mut ChaCha8Rng) -> Fan {
    loop {
        let pts: Vec<(i64, i64)> = (0..r.gen_range(4..=8)).map(|_| (r.gen_range(-3..=3), r.gen_range(-3..=3))).collect();
        let hull = convex_hull(pts);
        if hull.len() < 3 {
            continue;
        }
        let rays: Vec<Vec<BigInt>> = hull.iter().map(|&(x, y)| bv(&[x, y, 1])).collect();
        let n = rays.len();
        return Fan::new(3, rays, vec![(0..n).collect()]);
    }
}

fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Fixture fans refined at their crepant rays.
fn crepant_refinements() -> Result<Vec<(String, Fan, Fan)>, String> {
    let mut out = Vec::new();
    for (name, rays) in CREPANT_RAYS {
        let base = load_fan(name);
        let sf = ok(support_function(&base), name)?;
        let mut fan = base.clone();
        for v in rays.iter() {
            let v = bv(v);
            ensure!(sf.eval(&base, &v) == Some(int(1)), "{name}: ray {v:?} is not crepant");
            fan = ok(star_subdivide(&fan, &v), name)?;
        }
        out.push((format!("{name}+{}", rays.len()), base, fan));
    }
    Ok(out)
}

// ------------------------------------------------------------------ criteria

fn criterion_1() -> Outcome {
    let path = fixtures_dir().join("strata/a2_threefold.json");
    let path = path.to_str().unwrap();
    let (code, out) = run_cli(&["resolution", path, "--output", "json"]);
    ensure!(code == 0, "exit code {code}");
    let report: Value = ok(serde_json::from_str(&out), "report json")?;

    let mut num = uv_poly(&[1, 2, 1, 1], 1);
    num = num.try_mul(&uv_poly(&[0, 0, 1], 1)).unwrap();
    let want = StringyFraction::new(num, CyclotomicMultiset::from_factors([(3, 1)]).unwrap());
    let got = ok(parse_fraction(&item(&report, "E_st").ok_or("no E_st")?.to_string()), "E_st")?;
    ensure!(got == want, "E_st = {}, expected {}", emit_fraction(&got), emit_fraction(&want));
    ensure!(got.is_reduced(), "emitted fraction not reduced");
    ensure!(item(&report, "e_st") == Some(&Value::from("5/3")), "e_st = {:?}", item(&report, "e_st"));
    let hodge = item(&report, "hodge").and_then(Value::as_str).unwrap_or("");
    ensure!(hodge.contains("do not exist"), "hodge payload {hodge:?}");

    let (_, text) = run_cli(&["resolution", path]);
    ensure!(
        text.contains("(uv)^2 ((uv)^3 + (uv)^2 + 2uv + 1) / ((uv)^2 + uv + 1)"),
        "text rendering differs: {text}"
    );
    let data = load_strata("a2_threefold");
    let r = ok(stringy_e(&data), "stringy_e")?;
    ensure!(matches!(stringy_hodge(&r), Err(Error::StringyHodgeDoNotExist(_))), "Hodge numbers exist");
    ensure!(ok(stringy_euler(&data), "euler")? == rat(5, 3), "euler limit");
    ensure!(agrees_with_definition(&data, &r.fraction), "fraction disagrees with the defining sum");
    Ok("E_st, e_st = 5/3, no Hodge numbers".into())
}

/// E-polynomial of a smooth quadric of dimension `d - 1`, in `uv`.
fn quadric_e(d: usize) -> Vec<i64> {
    if (d - 1) % 2 == 0 {
        let mut a = vec![0; (d - 1) / 2 + 1];
        a[0] = 1;
        a[(d - 1) / 2] += 1;
        poly_div(&poly_mul(&a, &binomial(d.div_ceil(2))), &binomial(1))
    } else {
        poly_div(&binomial(d), &binomial(1))
    }
}

fn criterion_2() -> Outcome {
    for d in 3..=6usize {
        let e0 = quadric_e(d);
        let r = ok(cone_over_fano(&epoly_uv(&e0), d as u64 - 1, 1, d as u32), "cone_over_fano")?;
        let want = StringyFraction::new(
            uv_poly(&poly_mul(&binomial(d), &e0), 1),
            CyclotomicMultiset::z_power_minus_one(d as u64 - 1).unwrap(),
        );
        ensure!(r.fraction == want, "d = {d}: E_st differs");
        let e = ok(r.e_st(), "e_st")?;
        let di = d as i64;
        let expected = if (d - 1) % 2 == 0 { rat(di * (di + 1), di - 1) } else { rat(di * di, di - 1) };
        ensure!(e == expected, "d = {d}: e_st = {e}, expected {expected}");
        let shipped = ok(stringy_e(&load_strata(&format!("quadric_cone_d{d}"))), "fixture")?;
        ensure!(shipped.fraction == r.fraction, "d = {d}: shipped fixture differs");
        if d == 3 {
            let poly = StringyFraction::from_ring(uv_poly(&poly_mul(&[1, 1], &[1, 1, 1]), 1));
            ensure!(r.fraction == poly, "d = 3 is not (uv+1)((uv)^2+uv+1)");
            let h = ok(stringy_hodge(&r), "hodge")?;
            ensure!(h.get(1, 1) == BigInt::from(2) && h.get(2, 2) == BigInt::from(2), "h11/h22");
            ensure!(h.get(0, 0).is_one() && h.get(3, 3).is_one(), "h00/h33");
        } else {
            ensure!(!r.fraction.is_polynomial(), "d = {d} should not be a polynomial");
            ensure!(matches!(stringy_hodge(&r), Err(Error::StringyHodgeDoNotExist(_))), "d = {d} Hodge");
        }
    }
    Ok("d = 3..6: E_st, e_st = 6, 16/3, 15/2, 36/5; h11 = h22 = 2 at d = 3".into())
}

fn criterion_3() -> Outcome {
    // (base, E(X_0) in uv, k, l)
    let cases: [(&str, Vec<i64>, u64, u64); 5] = [
        ("fano_cone_p2_3_1", vec![1, 1, 1], 3, 1),
        ("fano_cone_p2_3_2", vec![1, 1, 1], 3, 2),
        ("fano_cone_p1_2_3", vec![1, 1], 2, 3),
        ("fano_cone_p1xp1_2_1", vec![1, 2, 1], 2, 1),
        ("fano_cone_p3_4_3", vec![1, 1, 1, 1], 4, 3),
    ];
    let mut fractional = 0;
    for (name, e0, k, l) in cases {
        let d = e0.len() as u32;
        let r = ok(cone_over_fano(&epoly_uv(&e0), k, l, d), name)?;
        let e_x0: i64 = e0.iter().sum();
        let want_e = Rational::new(BigInt::from(k + l), BigInt::from(k)) * int(e_x0);
        ensure!(ok(r.e_st(), name)? == want_e, "{name}: e_st");
        // ((uv)^{k/l+1} - 1) / ((uv)^{k/l} - 1) · E0 with z = (uv)^{1/l}
        let mut num = RingElement::z_power(l, (k + l) as i64);
        num = &num - &RingElement::one(l);
        num = num.try_mul(&uv_poly(&e0, l)).unwrap();
        let want = StringyFraction::new(num, CyclotomicMultiset::z_power_minus_one(k).unwrap());
        ensure!(ok(r.fraction.same_function(&want), name)?, "{name}: E_st differs");
        let shipped = load_strata(name);
        let s = ok(stringy_e(&shipped), name)?;
        ensure!(ok(s.fraction.same_function(&want), name)?, "{name}: shipped fixture differs");
        ensure!(agrees_with_definition(&shipped, &s.fraction), "{name}: defining sum");
        if k % l != 0 {
            fractional += 1;
            ensure!(r.fraction.root_index() > 1, "{name}: expected a fractional root index");
        }
    }
    Ok(format!("5 bases, {fractional} with k/l not an integer"))
}

fn criterion_4() -> Outcome {
    let known: BTreeMap<&str, Vec<i64>> = [("a1_cone", vec![0, 1, 1]), ("weighted_p121", vec![1, 2, 1])].into();
    for (fan_name, smooth_name) in REFINEMENTS {
        let fan = load_fan(fan_name);
        let smooth = load_fan(smooth_name);
        let toric = ok(stringy_e_toric(&fan, DEFAULT_BOX_CAP), fan_name)?;
        let data = ok(resolution_strata_from_subdivision(&fan, &smooth), fan_name)?;
        let res = ok(stringy_e(&data), fan_name)?;
        ensure!(ok(toric.fraction.same_function(&res.fraction), fan_name)?, "{fan_name}: toric != resolution");
        ensure!(agrees_with_definition(&data, &res.fraction), "{fan_name}: defining sum");
        let want = StringyFraction::from_ring(uv_poly(&known[fan_name], 1));
        ensure!(ok(toric.fraction.same_function(&want), fan_name)?, "{fan_name}: unexpected E_st");
    }
    Ok("A1 cone and weighted plane".into())
}

fn q_gorenstein_corpus() -> Result<Vec<(String, Fan)>, String> {
    let mut out: Vec<(String, Fan)> = FANS
        .iter()
        .filter(|f| f.name != "not_q_gorenstein")
        .map(|f| (f.name.to_string(), f.load().unwrap()))
        .collect();
    for (name, _, fan) in crepant_refinements()? {
        out.push((name, fan));
    }
    for (i, fan) in random_simplicial_cones(7, 24).into_iter().enumerate() {
        out.push((format!("random_simplicial_{i}"), fan));
    }
    for (i, fan) in random_gorenstein_cones(11, 12).into_iter().enumerate() {
        out.push((format!("random_gorenstein_{i}"), fan));
    }
    Ok(out)
}

fn criterion_5() -> Outcome {
    let corpus = q_gorenstein_corpus()?;
    let mut max_index = BigInt::zero();
    for (name, fan) in &corpus {
        let r = ok(stringy_e_toric(fan, DEFAULT_BOX_CAP), name)?;
        let e = ok(r.e_st(), name)?;
        let vol = ok(shed_volume(fan), name)?;
        ensure!(e.is_integer(), "{name}: e_st = {e} is not an integer");
        ensure!(e == Rational::from_integer(vol.clone()), "{name}: e_st = {e}, vol = {vol}");
        ensure!(vol == volume_oracle(fan), "{name}: vol = {vol}, oracle {}", volume_oracle(fan));
        if name.starts_with("random_simplicial") {
            max_index = max_index.max(vol);
        }
    }
    ensure!(corpus.len() >= 20, "corpus too small");
    Ok(format!("{} fans, largest random index {max_index}", corpus.len()))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for (name, fan) in q_gorenstein_corpus()? {
        let sf = ok(support_function(&fan), &name)?;
        if sf.root_index != 1 {
            continue;
        }
        count += 1;
        let f = ok(stringy_e_toric(&fan, DEFAULT_BOX_CAP), &name)?.fraction;
        ensure!(f.is_polynomial() && f.denominator().is_empty(), "{name}: not a polynomial");
        ensure!(f.root_index() == 1, "{name}: root index {}", f.root_index());
        ensure!(f.numerator().terms().all(|(m, _)| m.a == 0 && m.b == 0), "{name}: not pure uv powers");
    }
    ensure!(count >= 10, "only {count} Gorenstein fans");
    Ok(format!("{count} Gorenstein fans"))
}

fn criterion_7() -> Outcome {
    let mut checked = Vec::new();
    let mut excluded = Vec::new();
    let mut results: Vec<(String, StringyResult)> = Vec::new();
    for f in STRATA {
        if f.projective {
            results.push((f.name.into(), ok(stringy_e(&f.load().unwrap()), f.name)?));
        } else {
            excluded.push(f.name.to_string());
        }
    }
    for f in FANS {
        if f.complete {
            results.push((f.name.into(), ok(stringy_e_toric(&f.load().unwrap(), DEFAULT_BOX_CAP), f.name)?));
        } else {
            excluded.push(f.name.to_string());
        }
    }
    for (name, _, fan) in crepant_refinements()? {
        if fan.is_complete() {
            results.push((name.clone(), ok(stringy_e_toric(&fan, DEFAULT_BOX_CAP), &name)?));
        }
    }
    for (name, r) in &results {
        let f = &r.fraction;
        ensure!(f.poincare_dual(r.dim) == *f, "{name}: not fixed by duality");
        ensure!(f.evaluate_at(&int(0), &int(0)) == Ok(int(1)), "{name}: value at 0 is not 1");
        ensure!(check_duality(r), "{name}: check_duality");
        checked.push(name.clone());
    }
    Ok(format!(
        "{} projective fixtures; not projective, excluded: {}",
        checked.len(),
        excluded.join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let minimal = load_strata("a1_minimal");
    let blown = load_strata("a1_blown_up");
    ensure!(ok(verify_resolution_independence(&minimal, &blown), "independence")?, "fractions differ");
    let want = StringyFraction::from_ring(uv_poly(&[0, 1, 1], 1));
    for d in [&minimal, &blown] {
        let f = ok(stringy_e(d), "a1")?.fraction;
        ensure!(f == want, "E_st is not (uv)^2 + uv");
        ensure!(agrees_with_definition(d, &f), "defining sum");
    }
    let toric = ok(stringy_e_toric(&load_fan("a1_cone"), DEFAULT_BOX_CAP), "toric")?;
    ensure!(toric.fraction == want, "toric route differs");
    let a2 = load_strata("a2_threefold");
    let mut perturbed = a2.clone();
    perturbed.divisors[1].a = int(3);
    ensure!(!ok(verify_resolution_independence(&a2, &perturbed), "a2")?, "perturbed data not detected");
    Ok("minimal and over-blown resolutions both give (uv)^2 + uv".into())
}

fn criterion_9() -> Outcome {
    let refinements = crepant_refinements()?;
    for (name, base, fan) in &refinements {
        ensure!(fan.rays().len() > base.rays().len(), "{name}: nothing added");
        let a = ok(stringy_e_toric(base, DEFAULT_BOX_CAP), name)?;
        let b = ok(stringy_e_toric(fan, DEFAULT_BOX_CAP), name)?;
        ensure!(a.fraction == b.fraction, "{name}: E_st changed");
    }
    ensure!(refinements.len() >= 5, "too few fixtures");
    Ok(format!("{} crepant subdivisions", refinements.len()))
}

fn criterion_10() -> Outcome {
    for f in STRATA {
        let d = f.load().unwrap();
        let integral = ok(motivic_integral_nc(&d, d.dim), f.name)?;
        let via = ok(from_stringy(&ok(stringy_e(&d), f.name)?, d.dim), f.name)?;
        ensure!(ok(integral.same_value(&via), f.name)?, "{}: arc integral differs", f.name);
    }
    let grid = [rat(-3, 1), rat(-3, 2), rat(-1, 1), rat(-2, 3), rat(-1, 2), rat(0, 1), rat(1, 3), rat(2, 1)];
    for a in grid {
        let data = StratifiedResolutionData {
            dim: 2,
            divisors: vec![DivisorRecord { name: "D".into(), a: a.clone() }],
            kind: StrataKind::Open,
            strata: vec![
                StratumRecord { j: vec![], e: epoly_uv(&[0, -1, 1]) },
                StratumRecord { j: vec![0], e: epoly_uv(&[1, 1]) },
            ],
        };
        let r = motivic_integral_nc(&data, 2);
        let rejected = matches!(r, Err(Error::NotIntegrable(_)));
        ensure!(rejected == (a <= int(-1)), "a = {a}: rejected = {rejected}");
        if !rejected {
            let via = ok(from_stringy(&ok(stringy_e(&data), "grid")?, 2), "grid")?;
            ensure!(ok(r.unwrap().same_value(&via), "grid")?, "a = {a}: identity");
        }
    }
    Ok(format!("{} fixtures, NotIntegrable exactly for a <= -1", STRATA.len()))
}

fn criterion_11() -> Outcome {
    for (name, lhs) in [("k3", 4), ("elliptic_curve", 0), ("point", 0)] {
        let r = ok(stringy_e(&load_strata(name)), name)?;
        let v = ok(virasoro_check(&r), name)?;
        ensure!(v.lhs == int(lhs) && v.rhs == int(lhs) && v.equal, "{name}: {} vs {}", v.lhs, v.rhs);
    }
    Ok("K3 4 = 4, elliptic curve 0 = 0, point 0 = 0".into())
}

// ------------------------------------------------------------------ properties

const INSTANCES: usize = 120;

fn random_ring(r: &mut ChaCha8Rng, n: u64) -> RingElement {
    let mut x = RingElement::zero(n);
    for _ in 0..r.gen_range(0..5) {
        let a = r.gen_range(0..3);
        let b = r.gen_range(0..3);
        x.add_monomial(a, b, r.gen_range(-4..=4), BigInt::from(r.gen_range(-3..=3)));
    }
    x
}

fn ring_laws(r: &mut ChaCha8Rng) -> Result<(), String> {
    let n = *[1u64, 2, 3, 6].choose(r).unwrap();
    let (x, y, w) = (random_ring(r, n), random_ring(r, n), random_ring(r, n));
    let m = |a: &RingElement, b: &RingElement| a.try_mul(b).unwrap();
    ensure!(m(&m(&x, &y), &w) == m(&x, &m(&y, &w)), "associativity");
    ensure!(m(&x, &y) == m(&y, &x), "commutativity");
    ensure!(m(&x, &(&y + &w)) == &m(&x, &y) + &m(&x, &w), "distributivity");
    ensure!(m(&x, &RingElement::one(n)) == x, "unit");
    ensure!((&x - &x).is_zero(), "inverse");
    // uv = z^N
    let uv = RingElement::monomial(n, 1, 1, 0, 1);
    ensure!(uv == RingElement::z_power(n, n as i64), "uv relation");
    Ok(())
}

fn reduce_fixpoint(r: &mut ChaCha8Rng) -> Result<(), String> {
    let n = *[1u64, 2, 3].choose(r).unwrap();
    let mut den = CyclotomicMultiset::new();
    for _ in 0..r.gen_range(0..4) {
        den = den.union(&CyclotomicMultiset::z_power_minus_one(r.gen_range(1..=6)).unwrap());
    }
    let mut num = random_ring(r, n);
    // plant a common factor so that reduction has something to cancel
    if r.gen_bool(0.5) {
        let k = r.gen_range(1..=6);
        let binom = &RingElement::z_power(n, k) - &RingElement::one(n);
        num = num.try_mul(&binom).unwrap();
        den = den.union(&CyclotomicMultiset::z_power_minus_one(k as u64).unwrap());
    }
    let f = StringyFraction::unreduced(num, den);
    let once = reduce_fraction(&f);
    ensure!(reduce_fraction(&once) == once, "not a fixpoint");
    ensure!(once.is_reduced(), "not reduced");
    for &(p, q, x) in SAMPLE_POINTS {
        let (s, x) = (rat(p, q), int(x));
        ensure!(fraction_at(&f, &s, &x) == fraction_at(&once, &s, &x), "value changed");
    }
    Ok(())
}

fn random_data(r: &mut ChaCha8Rng) -> StratifiedResolutionData {
    let k = r.gen_range(0..=3usize);
    let divisors = (0..k)
        .map(|i| DivisorRecord {
            name: format!("D{i}"),
            a: rat(r.gen_range(-2..=6), *[1, 2, 3].choose(r).unwrap()).max(rat(-1, 2)),
        })
        .collect();
    let dim = 3;
    let mut strata = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask != 0 && r.gen_bool(0.3) {
            continue;
        }
        let j: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let coeffs: Vec<i64> = (0..=(dim - j.len())).map(|_| r.gen_range(-2..=3)).collect();
        let mut e = epoly_uv(&coeffs);
        if r.gen_bool(0.3) {
            e.add_term(1, 0, BigInt::from(r.gen_range(-2..=2)));
        }
        strata.push(StratumRecord { j, e });
    }
    StratifiedResolutionData { dim: dim as u32, divisors, kind: StrataKind::Open, strata }
}

fn mobius_round_trip(r: &mut ChaCha8Rng) -> Result<(), String> {
    let d = random_data(r);
    let closed = convert_strata(&d, StrataKind::Closed);
    let back = convert_strata(&closed, StrataKind::Open);
    ensure!(back.strata_map() == d.strata_map(), "round trip changed strata");
    let a = stringy_e(&d).map_err(|e| e.to_string())?;
    let b = stringy_e_closed_form(&closed).map_err(|e| e.to_string())?;
    ensure!(a.fraction.same_function(&b.fraction).unwrap(), "closed form differs");
    ensure!(agrees_with_definition(&d, &a.fraction), "defining sum");
    Ok(())
}

fn random_arc(r: &mut ChaCha8Rng) -> ArcElement {
    let mut x = ArcElement::zero();
    for _ in 0..r.gen_range(0..4) {
        let theta = rat(r.gen_range(-6..=6), *[1, 2, 3].choose(r).unwrap());
        x.add_term(r.gen_range(-2..=2), theta, BigInt::from(r.gen_range(-3..=3)));
    }
    x
}

fn norm_laws(r: &mut ChaCha8Rng) -> Result<(), String> {
    let (x, y) = (random_arc(r), random_arc(r));
    let nx = theta_lognorm(&x);
    let ny = theta_lognorm(&y);
    ensure!(theta_lognorm(&(&x * &y)) == &nx + &ny, "multiplicativity");
    ensure!(theta_lognorm(&(&x + &y)) >= nx.clone().min(ny.clone()), "ultrametric");
    if nx != ny {
        ensure!(theta_lognorm(&(&x + &y)) == nx.min(ny), "strict ultrametric");
    }
    ensure!(theta_lognorm(&ArcElement::zero()) == LogNorm::Infinite, "zero");
    Ok(())
}

fn triangulation_order(r: &mut ChaCha8Rng) -> Result<(), String> {
    let fan = random_polygon_cone(r);
    let base = stringy_e_toric(&fan, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    let vol = shed_volume(&fan).map_err(|e| e.to_string())?;
    let mut order: Vec<usize> = (0..fan.rays().len()).collect();
    for _ in 0..2 {
        order.shuffle(r);
        let t = triangulate_with_order(&fan, &order);
        let e = stringy_e_toric(&t, DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
        ensure!(e.fraction == base.fraction, "order {order:?} changes E_st");
        ensure!(shed_volume(&t).map_err(|e| e.to_string())? == vol, "order {order:?} changes vol");
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    type Prop = fn(&mut ChaCha8Rng) -> Result<(), String>;
    let suites: [(&str, Prop); 5] = [
        ("ring laws", ring_laws),
        ("reduce fixpoint", reduce_fixpoint),
        ("Mobius round-trip", mobius_round_trip),
        ("norm laws", norm_laws),
        ("triangulation order", triangulation_order),
    ];
    let mut done = Vec::new();
    for (seed, (name, prop)) in suites.iter().enumerate() {
        let mut r = rng(1000 + seed as u64);
        let t = Instant::now();
        for i in 0..INSTANCES {
            prop(&mut r).map_err(|e| format!("{name}, instance {i}: {e}"))?;
        }
        done.push(format!("{name} x{INSTANCES} ({} ms)", t.elapsed().as_millis()));
    }
    Ok(done.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("A2 threefold", criterion_1),
        ("quadric cones", criterion_2),
        ("cones over Fano bases", criterion_3),
        ("toric formula vs resolution", criterion_4),
        ("shed volume", criterion_5),
        ("Gorenstein implies polynomial", criterion_6),
        ("duality and normalization", criterion_7),
        ("resolution independence", criterion_8),
        ("crepant invariance", criterion_9),
        ("arc identity", criterion_10),
        ("second-derivative identity", criterion_11),
        ("property suites", criterion_12),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {title} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 12 passed in {} ms", 12 - failures, start.elapsed().as_millis());
    if failures > 0 {
        std::process::exit(1);
    }
}
