//! Exact polyhedral geometry of cones generated by lattice rays.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg::{dot, nullspace, rank, QVec};
use crate::rational::Rational;

/// H-description of a cone `cone(rays)` inside `Q^d`.
#[derive(Debug, Clone)]
pub(crate) struct ConeGeometry {
    pub ids: Vec<usize>,
    pub vecs: Vec<QVec>,
    pub ambient: usize,
    pub dim: usize,
    /// Basis of the orthogonal complement of the span.
    pub equalities: Vec<QVec>,
    /// Inner facet normals with the ray ids on each facet.
    pub facets: Vec<(QVec, Vec<usize>)>,
}

impl ConeGeometry {
    pub fn new(ids: &[usize], all: &[QVec], ambient: usize) -> Self {
        let vecs: Vec<QVec> = ids.iter().map(|&i| all[i].clone()).collect();
        let dim = rank(&vecs, ambient);
        let equalities = nullspace(&vecs, ambient);
        let mut facets: Vec<(QVec, Vec<usize>)> = Vec::new();
        let mut seen = BTreeSet::new();
        if dim >= 1 {
            for subset in independent_subsets(&vecs, dim - 1, ambient) {
                let mut rows: Vec<QVec> = equalities.clone();
                rows.extend(subset.iter().map(|&i| vecs[i].clone()));
                let normals = nullspace(&rows, ambient);
                // inside the span the functional vanishing on the subset is unique up to scale
                let Some(mut m) = normals.into_iter().find(|m| vecs.iter().any(|v| !dot(m, v).is_zero()))
                else {
                    continue;
                };
                let vals: Vec<Rational> = vecs.iter().map(|v| dot(&m, v)).collect();
                let pos = vals.iter().any(|x| x.is_positive());
                let neg = vals.iter().any(|x| x.is_negative());
                if pos && neg {
                    continue;
                }
                if neg {
                    m = m.iter().map(|x| -x).collect();
                }
                let on: Vec<usize> = (0..vecs.len()).filter(|&i| vals[i].is_zero()).collect();
                if seen.insert(on.clone()) {
                    facets.push((m, on.iter().map(|&i| ids[i]).collect()));
                }
            }
        }
        Self { ids: ids.to_vec(), vecs, ambient, dim, equalities, facets }
    }

    /// No line inside the cone.
    pub fn is_pointed(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        let mut rows = self.equalities.clone();
        rows.extend(self.facets.iter().map(|(m, _)| m.clone()));
        rank(&rows, self.ambient) == self.ambient
    }

    pub fn contains(&self, x: &QVec) -> bool {
        self.equalities.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|(m, _)| !dot(m, x).is_negative())
    }

    /// Ray ids of the minimal face containing the given rays.
    pub fn face_closure(&self, subset: &[usize]) -> Vec<usize> {
        let mut out: BTreeSet<usize> = self.ids.iter().copied().collect();
        for (_, on) in &self.facets {
            if subset.iter().all(|s| on.contains(s)) {
                out.retain(|r| on.contains(r));
            }
        }
        out.into_iter().collect()
    }

    pub fn is_face(&self, subset: &[usize]) -> bool {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        self.face_closure(&s) == s
    }

    /// Every face of a pointed cone, as sorted ray-id lists.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut ids = self.ids.clone();
        ids.sort_unstable();
        out.insert(ids.clone());
        let mut stack = vec![ids];
        while let Some(face) = stack.pop() {
            for (_, on) in &self.facets {
                let sub: Vec<usize> = face.iter().copied().filter(|r| on.contains(r)).collect();
                if sub.len() < face.len() && out.insert(sub.clone()) {
                    stack.push(sub);
                }
            }
        }
        out.insert(Vec::new());
        out.into_iter().collect()
    }

    /// Rays whose minimal face is larger than the ray itself.
    pub fn non_extremal(&self) -> Vec<usize> {
        self.ids
            .iter()
            .copied()
            .filter(|&r| self.face_closure(&[r]) != vec![r])
            .collect()
    }
}

/// Index sets of `k` linearly independent vectors (all such subsets).
pub(crate) fn independent_subsets(vecs: &[QVec], k: usize, ambient: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(vecs: &[QVec], k: usize, ambient: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..vecs.len() {
            cur.push(i);
            let rows: Vec<QVec> = cur.iter().map(|&j| vecs[j].clone()).collect();
            if rank(&rows, ambient) == cur.len() {
                go(vecs, k, ambient, i + 1, cur, out);
            }
            cur.pop();
        }
    }
    go(vecs, k, ambient, 0, &mut cur, &mut out);
    out
}

/// Extreme rays of `{x : E x = 0, H x >= 0}` (empty if the set is a linear
/// space or `{0}`; lines are reported through both directions).
pub(crate) fn extreme_rays(eqs: &[QVec], ineqs: &[QVec], ambient: usize) -> Vec<QVec> {
    let base = nullspace(eqs, ambient);
    if base.is_empty() {
        return Vec::new();
    }
    let mut out: Vec<QVec> = Vec::new();
    let feasible = |x: &QVec| ineqs.iter().all(|h| !dot(h, x).is_negative());
    // an extreme ray is cut out by the equalities and some independent tight inequalities
    let free = base.len();
    for subset in independent_subsets(ineqs, free.saturating_sub(1), ambient) {
        let mut rows = eqs.to_vec();
        rows.extend(subset.iter().map(|&i| ineqs[i].clone()));
        let ns = nullspace(&rows, ambient);
        if ns.len() != 1 {
            continue;
        }
        for sign in [1i64, -1] {
            let x: QVec = ns[0].iter().map(|c| c * Rational::from_integer(sign.into())).collect();
            if feasible(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    if free == 1 {
        // no inequality is needed to cut out a line
        for x in [base[0].clone(), base[0].iter().map(|c| -c).collect()] {
            if feasible(&x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// `x` lies in the linear span of `vecs`.
pub(crate) fn in_span(vecs: &[QVec], x: &QVec, ambient: usize) -> bool {
    let mut rows = vecs.to_vec();
    let r = rank(&rows, ambient);
    rows.push(x.clone());
    rank(&rows, ambient) == r
}
