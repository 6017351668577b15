//! Fans of rational polyhedral cones and the toric form of the stringy
//! E-function.

mod boxes;
mod geometry;
mod stringy;
mod support;
mod triangulate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, to_q, QVec};

pub use boxes::{box_points, cone_index, BoxData, DEFAULT_BOX_CAP};
pub use stringy::{
    compare_flip_volumes, e_polynomial_toric, resolution_strata_from_subdivision, shed_volume, star_subdivide,
    stringy_e_toric, subdivision_discrepancies,
};
pub use support::{is_gorenstein, support_function, SupportFunction};
pub use triangulate::{triangulate, triangulate_with_order};

pub(crate) use geometry::ConeGeometry;

pub type LatticeVector = Vec<BigInt>;

/// A cone given by indices into the fan's ray list (kept sorted).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Self { rays }
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanDiagnostic {
    DimensionMismatch { ray: usize, len: usize },
    ZeroRay(usize),
    NonPrimitiveRay(usize),
    DuplicateRay(usize, usize),
    RayIndexOutOfRange { cone: usize, index: usize },
    EmptyCone(usize),
    NotPointed(usize),
    NonExtremalRay { cone: usize, ray: usize },
    ImproperIntersection(usize, usize),
    UnusedRay(usize),
}

impl FanDiagnostic {
    /// Unused rays are harmless for every computation.
    pub fn is_error(&self) -> bool {
        !matches!(self, FanDiagnostic::UnusedRay(_))
    }
}

impl fmt::Display for FanDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanDiagnostic::DimensionMismatch { ray, len } => write!(f, "ray {ray} has {len} coordinates"),
            FanDiagnostic::ZeroRay(r) => write!(f, "ray {r} is zero"),
            FanDiagnostic::NonPrimitiveRay(r) => write!(f, "ray {r} is not primitive"),
            FanDiagnostic::DuplicateRay(a, b) => write!(f, "rays {a} and {b} coincide"),
            FanDiagnostic::RayIndexOutOfRange { cone, index } => {
                write!(f, "cone {cone} refers to missing ray {index}")
            }
            FanDiagnostic::EmptyCone(c) => write!(f, "cone {c} has no rays"),
            FanDiagnostic::NotPointed(c) => write!(f, "cone {c} contains a line"),
            FanDiagnostic::NonExtremalRay { cone, ray } => {
                write!(f, "ray {ray} is not an extremal ray of cone {cone}")
            }
            FanDiagnostic::ImproperIntersection(a, b) => {
                write!(f, "cones {a} and {b} do not meet along a common face")
            }
            FanDiagnostic::UnusedRay(r) => write!(f, "ray {r} is in no cone"),
        }
    }
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Self {
        Self { dim, rays, max_cones: max_cones.into_iter().map(Cone::new).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub(crate) fn qrays(&self) -> Vec<QVec> {
        self.rays.iter().map(|r| to_q(r)).collect()
    }

    pub(crate) fn geometries(&self) -> Vec<ConeGeometry> {
        let q = self.qrays();
        self.max_cones.iter().map(|c| ConeGeometry::new(c.rays(), &q, self.dim)).collect()
    }

    /// Dimension of the span of a cone.
    pub fn cone_dim(&self, cone: &Cone) -> usize {
        let rows: Vec<QVec> = cone.rays().iter().map(|&i| to_q(&self.rays[i])).collect();
        rank(&rows, self.dim)
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(|c| self.cone_dim(c) == c.len())
    }

    /// Every face of every maximal cone, the zero cone included.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        out.insert(Vec::new());
        for g in self.geometries() {
            out.extend(g.faces());
        }
        let mut cones: Vec<Cone> = out.into_iter().map(Cone::new).collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cones
    }

    /// Support equals `R^d`: every maximal cell of a triangulation is
    /// full-dimensional and each of its facets is shared by exactly two cells.
    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let tri = triangulate(self);
        if tri.max_cones.is_empty() {
            return false;
        }
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in &tri.max_cones {
            if c.len() != self.dim {
                return false;
            }
            for skip in 0..c.len() {
                let facet: Vec<usize> = c.rays().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                *counts.entry(facet).or_default() += 1;
            }
        }
        counts.values().all(|&n| n == 2)
    }

    /// Index of the maximal cone containing `x`, if any.
    pub(crate) fn locate(&self, x: &QVec) -> Option<usize> {
        self.geometries().iter().position(|g| g.contains(x))
    }

    pub(crate) fn find_ray(&self, v: &[BigInt]) -> Option<usize> {
        self.rays.iter().position(|r| r.as_slice() == v)
    }
}

/// Structural checks; an empty list of errors means the fan is valid.
pub fn validate_fan(fan: &Fan) -> Vec<FanDiagnostic> {
    let mut out = Vec::new();
    let d = fan.dim;
    for (i, r) in fan.rays.iter().enumerate() {
        if r.len() != d {
            out.push(FanDiagnostic::DimensionMismatch { ray: i, len: r.len() });
        } else if r.iter().all(|x| x.is_zero()) {
            out.push(FanDiagnostic::ZeroRay(i));
        } else if !crate::linalg::content(r).is_one() {
            out.push(FanDiagnostic::NonPrimitiveRay(i));
        }
    }
    for i in 0..fan.rays.len() {
        for j in i + 1..fan.rays.len() {
            if fan.rays[i] == fan.rays[j] {
                out.push(FanDiagnostic::DuplicateRay(i, j));
            }
        }
    }
    let mut used = vec![false; fan.rays.len()];
    for (ci, c) in fan.max_cones.iter().enumerate() {
        if c.is_empty() {
            out.push(FanDiagnostic::EmptyCone(ci));
        }
        for &r in c.rays() {
            if r >= fan.rays.len() {
                out.push(FanDiagnostic::RayIndexOutOfRange { cone: ci, index: r });
            } else {
                used[r] = true;
            }
        }
    }
    if out.iter().any(|x| x.is_error()) {
        return out;
    }
    let geoms = fan.geometries();
    for (ci, g) in geoms.iter().enumerate() {
        if !g.is_pointed() {
            out.push(FanDiagnostic::NotPointed(ci));
            continue;
        }
        for ray in g.non_extremal() {
            out.push(FanDiagnostic::NonExtremalRay { cone: ci, ray });
        }
    }
    if out.iter().any(|x| x.is_error()) {
        return out;
    }
    for i in 0..geoms.len() {
        for j in i + 1..geoms.len() {
            if !proper_intersection(&geoms[i], &geoms[j]) {
                out.push(FanDiagnostic::ImproperIntersection(i, j));
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            out.push(FanDiagnostic::UnusedRay(i));
        }
    }
    out
}

/// Validation as a `Result`, for callers that only need pass or fail.
pub fn check_fan(fan: &Fan) -> Result<()> {
    match validate_fan(fan).into_iter().find(|d| d.is_error()) {
        Some(d) => Err(Error::InvalidFan(d.to_string())),
        None => Ok(()),
    }
}

/// The shared rays form a face of both cones and the intersection is the cone
/// they generate.
fn proper_intersection(a: &ConeGeometry, b: &ConeGeometry) -> bool {
    let shared: Vec<usize> = a.ids.iter().copied().filter(|r| b.ids.contains(r)).collect();
    if !a.is_face(&shared) || !b.is_face(&shared) {
        return false;
    }
    let mut eqs = a.equalities.clone();
    eqs.extend(b.equalities.iter().cloned());
    let mut ineqs: Vec<QVec> = a.facets.iter().map(|(m, _)| m.clone()).collect();
    ineqs.extend(b.facets.iter().map(|(m, _)| m.clone()));
    let span: Vec<QVec> = a
        .ids
        .iter()
        .zip(&a.vecs)
        .filter(|(r, _)| shared.contains(r))
        .map(|(_, v)| v.clone())
        .collect();
    geometry::extreme_rays(&eqs, &ineqs, a.ambient)
        .iter()
        .all(|x| geometry::in_span(&span, x, a.ambient))
}


#[cfg(test)]
mod tests {
    use super::test_fans::*;
    use super::*;

    #[test]
    fn p2_is_valid_and_complete() {
        let f = p2();
        assert!(validate_fan(&f).is_empty());
        assert!(f.is_complete());
        assert_eq!(f.all_cones().len(), 7);
        assert!(f.is_simplicial());
    }

    #[test]
    fn affine_cone_is_not_complete() {
        assert!(!a1().is_complete());
        assert!(validate_fan(&a1()).is_empty());
    }

    #[test]
    fn diagnostics() {
        let f = fan(2, &[&[2, 0], &[0, 1]], &[&[0, 1]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::NonPrimitiveRay(0)]);
        let f = fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[2]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::ImproperIntersection(0, 1)]);
        let f = fan(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::NonExtremalRay { cone: 0, ray: 1 }]);
        let f = fan(2, &[&[1, 0], &[-1, 0]], &[&[0, 1]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::NotPointed(0)]);
        let f = fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 5]]);
        assert!(matches!(validate_fan(&f)[0], FanDiagnostic::RayIndexOutOfRange { .. }));
        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::UnusedRay(2)]);
        assert!(check_fan(&f).is_ok());
        // overlapping 2-cones sharing a ray
        let f = fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]);
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::ImproperIntersection(0, 1)]);
    }

    #[test]
    fn shared_face_not_a_face() {
        // square cone and a simplicial cone sharing two opposite rays
        let f = fan(
            3,
            &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1], &[0, 1, -1]],
            &[&[0, 1, 2, 3], &[0, 2, 4]],
        );
        assert_eq!(validate_fan(&f), vec![FanDiagnostic::ImproperIntersection(0, 1)]);
    }
}
