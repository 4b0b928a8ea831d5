use std::collections::HashSet;

use serde::Serialize;

use super::chart::require_dim3;
use super::oracle::OracleLimits;
use crate::error::{Error, Result};
use crate::lattice_core::{LatticePoint, LatticePolytope};

/// For `k = 1..=max_k`: is every lattice point of `kP` a sum of `k` lattice
/// points of `P`? Entry `k - 1` answers for `k`.
pub fn normally_generated_check(p: &LatticePolytope, max_k: usize) -> Result<Vec<bool>> {
    normally_generated_check_with_limits(p, max_k, OracleLimits::default())
}

pub fn normally_generated_check_with_limits(
    p: &LatticePolytope,
    max_k: usize,
    limits: OracleLimits,
) -> Result<Vec<bool>> {
    let points = p.lattice_points();
    limits.check(points.len(), max_k)?;
    let mut sums: HashSet<LatticePoint> = points.iter().copied().collect();
    let mut verdicts = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        if k > 1 {
            sums = sums
                .iter()
                .flat_map(|s| points.iter().map(move |q| *s + *q))
                .collect();
        }
        let dilate = p.dilate(k as i64)?;
        verdicts.push(dilate.lattice_points().iter().all(|m| sums.contains(m)));
    }
    Ok(verdicts)
}

/// Lattice-point counts of the curve cut out by two general sections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FujitaCounts {
    /// `#(Q ∩ M)`.
    pub chi: i64,
    /// `#(int(2Q) ∩ M)`.
    pub genus: i64,
    /// `genus - 1 + chi`.
    pub degree: i64,
    /// `chi >= genus + 3`.
    pub quadric_by_fujita: bool,
}

pub fn fujita_counts(q: &LatticePolytope) -> Result<FujitaCounts> {
    require_dim3(q)?;
    if !q.interior_lattice_points().is_empty() {
        return Err(Error::InteriorNotEmpty);
    }
    let chi = q.lattice_points().len() as i64;
    let genus = q.dilate(2)?.interior_lattice_points().len() as i64;
    Ok(FujitaCounts {
        chi,
        genus,
        degree: genus - 1 + chi,
        quadric_by_fujita: chi >= genus + 3,
    })
}
