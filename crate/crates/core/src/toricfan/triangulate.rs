use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::Fan;
use crate::linalg::{dot, nullspace, rank, QVec};

/// Placing triangulation of every maximal cone, rays inserted in ascending
/// index order. Because the order is global, the cells agree on shared faces.
pub fn triangulate(fan: &Fan) -> Fan {
    let order: Vec<usize> = (0..fan.rays().len()).collect();
    triangulate_with_order(fan, &order)
}

/// Placing triangulation with rays inserted in the order given (a permutation
/// of the ray indices). No new rays are introduced.
pub fn triangulate_with_order(fan: &Fan, order: &[usize]) -> Fan {
    let q = fan.qrays();
    let rank_of: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in fan.max_cones() {
        let mut ids = cone.rays().to_vec();
        ids.sort_by_key(|r| rank_of.get(r).copied().unwrap_or(usize::MAX));
        for mut cell in place(&q, &ids, fan.dim()) {
            cell.sort_unstable();
            cells.insert(cell);
        }
    }
    let max_cones = cells.into_iter().collect();
    Fan::new(fan.dim(), fan.rays().to_vec(), max_cones)
}

fn place(q: &[QVec], ids: &[usize], d: usize) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = vec![Vec::new()];
    let mut span: Vec<QVec> = Vec::new();
    for &r in ids {
        let mut grown = span.clone();
        grown.push(q[r].clone());
        if rank(&grown, d) > span.len() {
            span = grown;
            for c in &mut cells {
                c.push(r);
            }
            continue;
        }
        let mut boundary: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in &cells {
            for (i, &opp) in c.iter().enumerate() {
                let mut f: Vec<usize> = c.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                f.sort_unstable();
                boundary.entry(f).or_default().push(opp);
            }
        }
        let mut added = Vec::new();
        for (f, opps) in boundary {
            if opps.len() != 1 {
                continue;
            }
            let opp = &q[opps[0]];
            let rows: Vec<QVec> = f.iter().map(|&i| q[i].clone()).collect();
            let Some(m) = nullspace(&rows, d).into_iter().find(|m| !dot(m, opp).is_zero()) else {
                continue;
            };
            // visible from r when r lies strictly on the far side of the facet
            let side = dot(&m, opp);
            let val = dot(&m, &q[r]);
            if !val.is_zero() && val.is_positive() != side.is_positive() {
                let mut cell = f.clone();
                cell.push(r);
                added.push(cell);
            }
        }
        cells.extend(added);
    }
    cells
}
