use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::boxes::{box_phis, cone_index};
use super::support::support_function;
use super::triangulate::triangulate;
use super::{check_fan, Cone, Fan, LatticeVector};
use crate::error::{Error, Result};
use crate::exactring::{EPolynomial, RingElement, StringyFraction};
use crate::linalg::{content, to_q};
use crate::rational::{format_rational, int, scaled_integer, Rational};
use crate::resolution::{DivisorRecord, StrataKind, StratifiedResolutionData, StratumRecord, StringyResult};

/// Faces of the simplicial cells of a triangulated fan, the zero cone included.
fn simplicial_faces(tri: &Fan) -> Vec<Cone> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for c in tri.max_cones() {
        let r = c.rays();
        for mask in 0u64..(1u64 << r.len()) {
            out.insert((0..r.len()).filter(|b| mask >> b & 1 == 1).map(|b| r[b]).collect());
        }
    }
    if out.is_empty() {
        out.insert(Vec::new());
    }
    out.into_iter().map(Cone::new).collect()
}

/// `(z^n - 1)^k` as a ring element.
fn t_minus_one_power(n: u64, k: usize) -> RingElement {
    let mut out = RingElement::zero(n);
    let mut binom = BigInt::one();
    for i in 0..=k {
        let sign = if (k - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        out.add_monomial(0, 0, (n as i64) * i as i64, &binom * sign);
        binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    out
}

/// `E_st = Σ_τ (uv - 1)^{d - dim τ} Σ_{w ∈ Box(τ)} (uv)^{dim τ - φ(w)}` over the
/// cones of a triangulation.
pub fn stringy_e_toric(fan: &Fan, cap: u64) -> Result<StringyResult> {
    check_fan(fan)?;
    let sf = support_function(fan)?;
    let n = sf.root_index;
    let d = fan.dim();
    let tri = triangulate(fan);
    let mut by_dim: Vec<RingElement> = vec![RingElement::zero(n); d + 1];
    for cone in simplicial_faces(&tri) {
        let k = cone.len();
        for phi in box_phis(&tri, &cone, cap)? {
            let e = scaled_integer(&(int(k as i64) - phi), n)
                .and_then(|x| x.to_i64())
                .ok_or_else(|| Error::Unsupported("box exponent out of range".into()))?;
            by_dim[k].add_monomial(0, 0, e, BigInt::one());
        }
    }
    let mut num = RingElement::zero(n);
    for (k, part) in by_dim.iter().enumerate() {
        if !part.is_zero() {
            num = &num + &t_minus_one_power(n, d - k).try_mul(part)?;
        }
    }
    Ok(StringyResult::new(StringyFraction::from_ring(num), None, d as u32))
}

/// Ordinary E-polynomial `Σ_σ (uv - 1)^{d - dim σ}` of the toric variety.
pub fn e_polynomial_toric(fan: &Fan) -> Result<EPolynomial> {
    check_fan(fan)?;
    let d = fan.dim();
    let mut counts = vec![0i64; d + 1];
    for c in fan.all_cones() {
        counts[fan.cone_dim(&c)] += 1;
    }
    let mut out = EPolynomial::zero();
    for (k, &m) in counts.iter().enumerate() {
        if m != 0 {
            out = &out + &EPolynomial::uv_minus_one_power((d - k) as u32).scale(&BigInt::from(m));
        }
    }
    Ok(out)
}

/// Sum of multiplicities of the full-dimensional cells of a triangulation.
pub fn shed_volume(fan: &Fan) -> Result<BigInt> {
    check_fan(fan)?;
    support_function(fan)?;
    let tri = triangulate(fan);
    Ok(tri
        .max_cones()
        .iter()
        .filter(|c| c.len() == fan.dim())
        .map(|c| cone_index(&tri, c))
        .sum())
}

pub fn compare_flip_volumes(f1: &Fan, f2: &Fan) -> Result<Ordering> {
    Ok(shed_volume(f1)?.cmp(&shed_volume(f2)?))
}

/// `sub` has the same support as `fan` and each of its cones lies in a cone of
/// `fan`. Checked by comparing the volumes of `{φ_σ <= 1} ∩ σ` per maximal cone.
fn check_refinement(fan: &Fan, sub: &Fan) -> Result<()> {
    if fan.dim() != sub.dim() {
        return Err(Error::NotARefinement("dimensions differ".into()));
    }
    let sf = support_function(fan)?;
    let fan_geoms = fan.geometries();
    let sub_tri = triangulate(sub);
    let fan_tri = triangulate(fan);
    let subq = sub.qrays();
    for (i, r) in subq.iter().enumerate() {
        if !fan_geoms.iter().any(|g| g.contains(r)) {
            return Err(Error::NotARefinement(format!("ray {i} lies outside the support")));
        }
    }
    let volume = |f: &Fan, cell: &Cone, m: &[Rational]| -> Rational {
        let denom: Rational = cell
            .rays()
            .iter()
            .map(|&r| crate::linalg::dot(m, &to_q(f.ray(r))))
            .product();
        Rational::from_integer(cone_index(f, cell)) / denom
    };
    let mut assigned = vec![false; sub_tri.max_cones().len()];
    for (gi, g) in fan_geoms.iter().enumerate() {
        let m = &sf.covectors[gi].1;
        let mut want = Rational::zero();
        for cell in fan_tri.max_cones() {
            if cell.len() == g.dim && cell.rays().iter().all(|r| g.ids.contains(r)) {
                want += volume(&fan_tri, cell, m);
            }
        }
        let mut got = Rational::zero();
        for (ci, cell) in sub_tri.max_cones().iter().enumerate() {
            if cell.len() == g.dim && cell.rays().iter().all(|&r| g.contains(&subq[r])) {
                assigned[ci] = true;
                got += volume(&sub_tri, cell, m);
            }
        }
        if got != want {
            return Err(Error::NotARefinement(format!(
                "cone {:?} is covered with volume {} instead of {}",
                fan.max_cones()[gi].rays(),
                format_rational(&got),
                format_rational(&want)
            )));
        }
    }
    if let Some(ci) = assigned.iter().position(|a| !a) {
        return Err(Error::NotARefinement(format!(
            "cell {:?} lies in no cone of the coarser fan",
            sub_tri.max_cones()[ci].rays()
        )));
    }
    Ok(())
}

/// Discrepancies `φ(v) - 1` of the rays of `sub` that are not rays of `fan`.
pub fn subdivision_discrepancies(fan: &Fan, sub: &Fan) -> Result<Vec<(LatticeVector, Rational)>> {
    check_fan(fan)?;
    check_fan(sub)?;
    check_refinement(fan, sub)?;
    let sf = support_function(fan)?;
    let mut out = Vec::new();
    for r in sub.rays() {
        if fan.find_ray(r).is_some() {
            continue;
        }
        let phi = sf
            .eval(fan, r)
            .ok_or_else(|| Error::NotARefinement("ray outside the support".into()))?;
        out.push((r.clone(), phi - Rational::one()));
    }
    Ok(out)
}

/// Stratified data of the toric log-resolution given by a smooth refinement:
/// the torus orbit of each cone lies in the open stratum of its new rays.
pub fn resolution_strata_from_subdivision(fan: &Fan, smooth: &Fan) -> Result<StratifiedResolutionData> {
    let disc = subdivision_discrepancies(fan, smooth)?;
    for c in smooth.max_cones() {
        if smooth.cone_dim(c) != c.len() || !cone_index(smooth, c).is_one() {
            return Err(Error::NotSmooth(c.rays().to_vec()));
        }
    }
    let mut div_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut divisors = Vec::new();
    for (i, r) in smooth.rays().iter().enumerate() {
        if fan.find_ray(r).is_none() {
            div_of.insert(i, divisors.len());
            let a = disc
                .iter()
                .find(|(v, _)| v == r)
                .map(|(_, a)| a.clone())
                .expect("every new ray has a discrepancy");
            divisors.push(DivisorRecord { name: format_ray(r), a });
        }
    }
    let d = smooth.dim();
    let mut strata: BTreeMap<Vec<usize>, EPolynomial> = BTreeMap::new();
    for c in simplicial_faces(smooth) {
        let j: Vec<usize> = c.rays().iter().filter_map(|r| div_of.get(r).copied()).collect();
        let slot = strata.entry(j).or_default();
        *slot = &*slot + &EPolynomial::uv_minus_one_power((d - c.len()) as u32);
    }
    strata.entry(Vec::new()).or_default();
    Ok(StratifiedResolutionData {
        dim: d as u32,
        divisors,
        kind: StrataKind::Open,
        strata: strata.into_iter().map(|(j, e)| StratumRecord { j, e }).collect(),
    })
}

fn format_ray(r: &[BigInt]) -> String {
    let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Star subdivision at a primitive lattice vector of the support.
pub fn star_subdivide(fan: &Fan, v: &[BigInt]) -> Result<Fan> {
    check_fan(fan)?;
    if v.len() != fan.dim() || v.iter().all(|x| x.is_zero()) || !content(v).is_one() {
        return Err(Error::InvalidFan("subdivision vector must be primitive and nonzero".into()));
    }
    if fan.find_ray(v).is_some() {
        return Ok(fan.clone());
    }
    let vq = to_q(v);
    let new = fan.rays().len();
    let mut rays = fan.rays().to_vec();
    rays.push(v.to_vec());
    let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut hit = false;
    for g in fan.geometries() {
        if !g.contains(&vq) {
            let mut ids = g.ids.clone();
            ids.sort_unstable();
            cones.insert(ids);
            continue;
        }
        hit = true;
        for (m, on) in &g.facets {
            if crate::linalg::dot(m, &vq).is_positive() {
                let mut c = on.clone();
                c.push(new);
                c.sort_unstable();
                cones.insert(c);
            }
        }
    }
    if !hit {
        return Err(Error::InvalidFan("subdivision vector lies outside the support".into()));
    }
    // drop cones that became faces of others
    let list: Vec<Vec<usize>> = cones.iter().cloned().collect();
    let max: Vec<Vec<usize>> = list
        .iter()
        .filter(|c| !list.iter().any(|o| o.len() > c.len() && c.iter().all(|x| o.contains(x))))
        .cloned()
        .collect();
    Ok(Fan::new(fan.dim(), rays, max))
}
