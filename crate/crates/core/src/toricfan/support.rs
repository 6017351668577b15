use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{dot, dot_qi, smith_normal_form, solve, to_q, QVec};
use crate::rational::{int, Rational};

/// The piecewise-linear function equal to 1 on every ray, linear on cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    /// One covector per maximal cone; only its restriction to the cone's span matters.
    pub covectors: Vec<(Cone, QVec)>,
    /// Least `N` with `N·φ` integral on the lattice points of the support.
    pub root_index: u64,
}

impl SupportFunction {
    /// `φ(x)` for `x` in the support.
    pub fn eval(&self, fan: &Fan, x: &[BigInt]) -> Option<Rational> {
        let q = to_q(x);
        let i = fan.locate(&q)?;
        Some(dot(&self.covectors[i].1, &q))
    }
}

pub fn support_function(fan: &Fan) -> Result<SupportFunction> {
    let q = fan.qrays();
    let d = fan.dim();
    let mut covectors = Vec::with_capacity(fan.max_cones().len());
    let mut n: u64 = 1;
    for cone in fan.max_cones() {
        let rows: Vec<QVec> = cone.rays().iter().map(|&i| q[i].clone()).collect();
        let ones = vec![int(1); rows.len()];
        let m = solve(&rows, &ones, d).ok_or_else(|| Error::NotQGorenstein { cone: cone.rays().to_vec() })?;
        n = n.lcm(&cone_index(fan, cone, &m)?);
        covectors.push((cone.clone(), m));
    }
    Ok(SupportFunction { covectors, root_index: n })
}

/// Lcm of denominators of `m` on a basis of the lattice points in the cone's span.
fn cone_index(fan: &Fan, cone: &Cone, m: &QVec) -> Result<u64> {
    if cone.is_empty() {
        return Ok(1);
    }
    let r: Vec<Vec<BigInt>> = cone.rays().iter().map(|&i| fan.ray(i).clone()).collect();
    let snf = smith_normal_form(&r);
    let k = snf.diagonal().iter().filter(|s| !num_traits::Zero::is_zero(*s)).count();
    let mut n = BigInt::one();
    for row in snf.v_inv.iter().take(k) {
        let val = dot_qi(m, row);
        n = n.lcm(val.denom());
    }
    n.to_u64().ok_or_else(|| Error::Unsupported("root index overflow".into()))
}

/// Gorenstein iff the support function is integral on the lattice.
pub fn is_gorenstein(fan: &Fan) -> Result<bool> {
    Ok(support_function(fan)?.root_index == 1)
}
