use std::collections::HashSet;

use serde::Serialize;

use super::certificate::{check_2d_on_points, DecompositionCertificate};
use super::chart::require_dim3;
use crate::error::{Error, Result};
use crate::lattice_core::{LatticePoint, LatticePolytope};

/// `Z_chart · Z_i − Z_k · Z_l`, indices into `point_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Quadric {
    pub chart: usize,
    pub i: usize,
    pub k: usize,
    pub l: usize,
}

impl Quadric {
    fn key(&self) -> ([usize; 2], [usize; 2]) {
        let mut a = [self.chart, self.i];
        let mut b = [self.k, self.l];
        a.sort_unstable();
        b.sort_unstable();
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticPresentation {
    pub point_order: Vec<LatticePoint>,
    pub binomials: Vec<Quadric>,
}

impl QuadraticPresentation {
    /// Each binomial vanishes on the torus: `m_chart + m_i = m_k + m_l`.
    pub fn exponent_identity_holds(&self, q: &Quadric) -> bool {
        let m = &self.point_order;
        let idx_ok = [q.chart, q.i, q.k, q.l].iter().all(|&j| j < m.len());
        idx_ok && m[q.chart].checked_add(m[q.i]).ok() == m[q.k].checked_add(m[q.l]).ok()
    }

    pub fn all_identities_hold(&self) -> bool {
        self.binomials
            .iter()
            .all(|q| self.exponent_identity_holds(q))
    }

    pub fn render(&self, q: &Quadric) -> String {
        format!("Z{}*Z{} - Z{}*Z{}", q.chart, q.i, q.k, q.l)
    }
}

/// Union of the chart quadrics over all vertices, deduplicated as binomials.
///
/// Propagates `PropertyFails` from the first vertex where the 2-D property
/// does not hold.
pub fn quadratic_presentation(p: &LatticePolytope) -> Result<QuadraticPresentation> {
    require_dim3(p)?;
    if let Some(v) = p.is_smooth().failing().next() {
        return Err(Error::NotSmoothVertex(*v));
    }
    let point_order = p.lattice_points();
    let certificates = p
        .vertices()
        .iter()
        .map(|v| check_2d_on_points(p, &point_order, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadraticPresentation::from_certificates(
        point_order,
        &certificates,
    ))
}

impl QuadraticPresentation {
    /// Assembles the deduplicated quadric list from one certificate per
    /// vertex. `point_order` must be the sorted lattice points.
    pub fn from_certificates(
        point_order: Vec<LatticePoint>,
        certificates: &[DecompositionCertificate],
    ) -> Self {
        let index = |m: &LatticePoint| point_order.binary_search(m).expect("lattice point of P");
        let mut seen = HashSet::new();
        let mut binomials = Vec::new();
        for cert in certificates {
            let chart = index(&cert.vertex);
            for w in &cert.witnesses {
                let q = Quadric {
                    chart,
                    i: index(&w.point),
                    k: index(&w.pair[0]),
                    l: index(&w.pair[1]),
                };
                if seen.insert(q.key()) {
                    binomials.push(q);
                }
            }
        }
        Self {
            point_order,
            binomials,
        }
    }
}
