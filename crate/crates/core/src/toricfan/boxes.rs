use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Cone, Fan, LatticeVector};
use crate::error::{Error, Result};
use crate::linalg::smith_normal_form;
use crate::rational::{int, Rational};

pub const DEFAULT_BOX_CAP: u64 = 10_000_000;

/// Lattice points `Σ λ_i r_i` with every `λ_i ∈ (0, 1]` for a simplicial cone,
/// with `φ = Σ λ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxData {
    pub cone: Cone,
    pub index: u64,
    pub points: Vec<(LatticeVector, Rational)>,
}

pub fn box_points(fan: &Fan, cone: &Cone, cap: u64) -> Result<BoxData> {
    let (index, phis, points) = enumerate(fan, cone, cap, true)?;
    let points = points.into_iter().zip(phis).collect();
    Ok(BoxData { cone: cone.clone(), index, points })
}

/// The `φ` values only, skipping the lattice vectors.
pub(crate) fn box_phis(fan: &Fan, cone: &Cone, cap: u64) -> Result<Vec<Rational>> {
    Ok(enumerate(fan, cone, cap, false)?.1)
}

/// Multiplicity of a simplicial cone: the index of the sublattice generated
/// by its rays inside the lattice points of its span.
pub fn cone_index(fan: &Fan, cone: &Cone) -> BigInt {
    let r: Vec<Vec<BigInt>> = cone.rays().iter().map(|&i| fan.ray(i).clone()).collect();
    if r.is_empty() {
        return BigInt::one();
    }
    smith_normal_form(&r).diagonal().iter().filter(|s| !s.is_zero()).product()
}

type Enumerated = (u64, Vec<Rational>, Vec<LatticeVector>);

fn enumerate(fan: &Fan, cone: &Cone, cap: u64, want_points: bool) -> Result<Enumerated> {
    let d = fan.dim();
    let k = cone.len();
    let rays: Vec<Vec<BigInt>> = cone.rays().iter().map(|&i| fan.ray(i).clone()).collect();
    if k == 0 {
        return Ok((1, vec![Rational::zero()], vec![vec![BigInt::zero(); d]]));
    }
    let snf = smith_normal_form(&rays);
    let s: Vec<BigInt> = snf.diagonal();
    if s.iter().any(|x| x.is_zero()) {
        return Err(Error::InvalidFan(format!("cone {:?} is not simplicial", cone.rays())));
    }
    let index: BigInt = s.iter().product();
    let too_big = || Error::CapExceeded { cone: cone.rays().to_vec(), index: index.to_string(), cap };
    let n = index.to_u64().ok_or_else(too_big)?;
    if n > cap {
        return Err(too_big());
    }
    let sum_rays = || -> LatticeVector {
        (0..d).map(|j| rays.iter().map(|r| &r[j]).sum()).collect()
    };
    if n == 1 {
        let pts = if want_points { vec![sum_rays()] } else { Vec::new() };
        return Ok((1, vec![int(k as i64)], pts));
    }
    // λ = y S^{-1} U for y in Π [0, s_i); shift each coordinate into (0, 1]
    let sizes: Vec<u64> = s.iter().map(|x| x.abs().to_u64().expect("bounded by index")).collect();
    let mut y = vec![0u64; k];
    let mut phis = Vec::with_capacity(n as usize);
    let mut pts = Vec::new();
    for _ in 0..n {
        let mut lambda: Vec<Rational> = vec![Rational::zero(); k];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0 {
                continue;
            }
            let f = Rational::new(BigInt::from(yi), s[i].clone());
            for (j, l) in lambda.iter_mut().enumerate() {
                *l += &f * Rational::from_integer(snf.u[i][j].clone());
            }
        }
        let mut phi = Rational::zero();
        for l in &mut lambda {
            *l = &*l - l.ceil() + Rational::one();
            phi += &*l;
        }
        phis.push(phi);
        if want_points {
            let w: LatticeVector = (0..d)
                .map(|j| {
                    let x: Rational = lambda
                        .iter()
                        .zip(&rays)
                        .map(|(l, r)| l * Rational::from_integer(r[j].clone()))
                        .sum();
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect();
            pts.push(w);
        }
        for (yi, &si) in y.iter_mut().zip(&sizes) {
            *yi += 1;
            if *yi < si {
                break;
            }
            *yi = 0;
        }
    }
    Ok((n, phis, pts))
}
