use std::collections::HashSet;

use serde::Serialize;

use super::chart::{basis_points, require_dim3};
use crate::error::{Error, Result};
use crate::lattice_core::{LatticePoint, LatticePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub point: LatticePoint,
    /// Sorted so that `pair[0] <= pair[1]`.
    pub pair: [LatticePoint; 2],
}

/// Witnesses `m + m0 = m_k + m_l` for every lattice point `m` other than the
/// vertex `m0` and its three basis points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub vertex: LatticePoint,
    pub witnesses: Vec<Witness>,
}

impl DecompositionCertificate {
    /// Re-checks every witness against the lattice points of `p`.
    pub fn verify(&self, p: &LatticePolytope) -> bool {
        let points: HashSet<LatticePoint> = p.lattice_points().into_iter().collect();
        self.witnesses.iter().all(|w| {
            let [a, b] = w.pair;
            a != self.vertex
                && b != self.vertex
                && points.contains(&a)
                && points.contains(&b)
                && points.contains(&w.point)
                && w.point.checked_add(self.vertex).ok() == a.checked_add(b).ok()
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Exhaustive search for the 2-D property at the smooth vertex `v`.
///
/// Among all valid pairs the graded-lex least `(m_k, m_l)` with
/// `m_k <= m_l` is chosen. Failure lists every point without a witness.
pub fn check_2d(p: &LatticePolytope, v: &LatticePoint) -> Result<DecompositionCertificate> {
    require_dim3(p)?;
    let points = p.lattice_points();
    check_2d_on_points(p, &points, v)
}

/// [`check_2d`] with the lattice points of `p` already enumerated.
pub fn check_2d_on_points(
    p: &LatticePolytope,
    points: &[LatticePoint],
    v: &LatticePoint,
) -> Result<DecompositionCertificate> {
    let basis = basis_points(p, v)?;
    let lookup: HashSet<LatticePoint> = points.iter().copied().collect();
    let mut witnesses = Vec::new();
    let mut unwitnessed = Vec::new();
    for &m in points {
        if m == *v || basis.contains(&m) {
            continue;
        }
        let target = m + *v;
        let pair = points.iter().find_map(|&a| {
            if a == *v {
                return None;
            }
            let b = target - a;
            (a <= b && b != *v && lookup.contains(&b)).then_some([a, b])
        });
        match pair {
            Some(pair) => witnesses.push(Witness { point: m, pair }),
            None => unwitnessed.push(m),
        }
    }
    if unwitnessed.is_empty() {
        Ok(DecompositionCertificate {
            vertex: *v,
            witnesses,
        })
    } else {
        Err(Error::PropertyFails {
            vertex: *v,
            unwitnessed,
        })
    }
}

/// Runs [`check_2d`] at every vertex, stopping at the first failure.
pub fn check_2d_all(p: &LatticePolytope) -> Result<Vec<DecompositionCertificate>> {
    require_dim3(p)?;
    let points = p.lattice_points();
    p.vertices()
        .iter()
        .map(|v| check_2d_on_points(p, &points, v))
        .collect()
}
