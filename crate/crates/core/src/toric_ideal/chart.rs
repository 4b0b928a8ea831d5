use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_core::{AffineUnimodularMap, LatticePoint, LatticePolytope};

/// Exponent vector of one non-basis lattice point in a vertex chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartExponent {
    pub point: LatticePoint,
    pub exponents: [i64; 3],
}

/// The affine chart at a smooth vertex `m0`: the three nearest lattice points
/// along its edges and, for every other lattice point `m`, the unique
/// non-negative expansion `m - m0 = Σ a_j (m_j - m0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartPresentation {
    pub vertex: LatticePoint,
    pub basis_points: [LatticePoint; 3],
    pub exponents: Vec<ChartExponent>,
}

pub(crate) fn require_dim3(p: &LatticePolytope) -> Result<()> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: p.dim(),
        });
    }
    Ok(())
}

/// Basis points `m0 + g_j` for the edge generators `g_j` of a smooth vertex.
pub(crate) fn basis_points(p: &LatticePolytope, v: &LatticePoint) -> Result<Vec<LatticePoint>> {
    let cone = p.vertex_cone(v)?;
    if !cone.is_unimodular() {
        return Err(Error::NotSmoothVertex(*v));
    }
    Ok(cone.generators.iter().map(|g| *v + *g).collect())
}

pub fn chart_presentation(p: &LatticePolytope, v: &LatticePoint) -> Result<ChartPresentation> {
    require_dim3(p)?;
    let cone = p.vertex_cone(v)?;
    if !cone.is_unimodular() {
        return Err(Error::NotSmoothVertex(*v));
    }
    let to_chart = AffineUnimodularMap::normalizing(*v, &cone.generators)?;
    let basis: Vec<LatticePoint> = cone.generators.iter().map(|g| *v + *g).collect();
    let mut exponents = Vec::new();
    for m in p.lattice_points() {
        if m == *v || basis.contains(&m) {
            continue;
        }
        let a = to_chart.apply_point(&m)?;
        if a.coords().iter().any(|&c| c < 0) {
            return Err(Error::NegativeExponent {
                vertex: *v,
                point: m,
            });
        }
        exponents.push(ChartExponent {
            point: m,
            exponents: [a.x(), a.y(), a.z()],
        });
    }
    Ok(ChartPresentation {
        vertex: *v,
        basis_points: [basis[0], basis[1], basis[2]],
        exponents,
    })
}
