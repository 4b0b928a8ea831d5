use rayon::prelude::*;
use serde::Serialize;

use super::report::run_check;
use crate::error::{Error, Result};
use crate::families::{
    build_family, case1_specs, case2_specs, case3_specs, random_nonsingular_polygons, FamilySpec,
};
use crate::lattice_core::{convex_hull, det2, LatticePolytope};
use crate::polygon_tools::find_basic_diamond;
use crate::toric_ideal::OracleLimits;

pub const MAX_SWEEP_EDGE: i64 = 8;
pub const MAX_SWEEP_COORD: i64 = 8;
pub const MAX_SWEEP_VERTICES: usize = 8;
pub const MAX_SWEEP_COUNT: usize = 10_000;

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<FamilySpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<LatticePolytope>,
    pub vertex_count: usize,
    pub lattice_point_count: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// `None` when the oracle was not requested or the instance exceeds its limits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_connected: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub command: &'static str,
    pub family: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub rows: Vec<SweepRow>,
    pub exit_status: i32,
}

impl SweepReport {
    fn new(family: &str, rows: Vec<SweepRow>) -> Self {
        let passed = rows.iter().filter(|r| r.passed).count();
        let failed = rows.len() - passed;
        Self {
            command: "sweep",
            family: family.into(),
            instances: rows.len(),
            passed,
            failed,
            rows,
            exit_status: if failed == 0 { 0 } else { 1 },
        }
    }

    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let oracle = match r.oracle_connected {
                Some(true) => "  oracle ok",
                Some(false) => "  oracle FAIL",
                None => "",
            };
            out += &format!(
                "{:>5}  {:<4}  v={:<2} n={:<4} {}{}\n",
                r.index,
                if r.passed { "ok" } else { "FAIL" },
                r.vertex_count,
                r.lattice_point_count,
                r.label,
                oracle
            );
            if let Some(d) = &r.detail {
                out += &format!("       {d}\n");
            }
        }
        out += &format!(
            "{}: {}/{} passed\n",
            self.family, self.passed, self.instances
        );
        out
    }
}

/// One polytope of a family sweep.
pub struct Instance {
    pub label: String,
    pub spec: Option<FamilySpec>,
    pub polytope: LatticePolytope,
}

fn spec_instances(specs: Vec<FamilySpec>) -> Result<Vec<Instance>> {
    specs
        .into_iter()
        .map(|spec| {
            let polytope = build_family(&spec)?;
            Ok(Instance {
                label: spec.label(),
                spec: Some(spec),
                polytope,
            })
        })
        .collect()
}

pub fn case1_instances() -> Result<Vec<Instance>> {
    spec_instances(case1_specs())
}

pub fn case2_instances(max_edge: i64) -> Result<Vec<Instance>> {
    if !(1..=MAX_SWEEP_EDGE).contains(&max_edge) {
        return Err(Error::InvalidArgument(format!(
            "max edge {max_edge} outside 1..={MAX_SWEEP_EDGE}"
        )));
    }
    spec_instances(case2_specs(max_edge))
}

/// Cayley polytopes over same-fan polygon pairs. With `minkowski`, each
/// pair with at most `variant_points` lattice points also contributes `2Q`
/// and `Q + F0 × 0`.
pub fn case3_instances(
    max_coord: i64,
    max_vertices: usize,
    minkowski: bool,
    variant_points: usize,
) -> Result<Vec<Instance>> {
    if !(1..=MAX_SWEEP_COORD).contains(&max_coord)
        || !(3..=MAX_SWEEP_VERTICES).contains(&max_vertices)
    {
        return Err(Error::InvalidArgument(format!(
            "polygon bounds must satisfy 1 <= max coord <= {MAX_SWEEP_COORD}, 3 <= max vertices <= {MAX_SWEEP_VERTICES}"
        )));
    }
    let mut out = Vec::new();
    for inst in spec_instances(case3_specs(max_coord, max_vertices))? {
        let variants = if minkowski && inst.polytope.lattice_points().len() <= variant_points {
            let Some(FamilySpec::Case3 { f0, .. }) = &inst.spec else {
                unreachable!()
            };
            let lifted: Vec<_> = f0.vertices().iter().map(|v| v.lift3(0)).collect();
            vec![
                (format!("2*({})", inst.label), inst.polytope.dilate(2)?),
                (
                    format!("({}) + f0", inst.label),
                    inst.polytope.minkowski_sum_points(&lifted)?,
                ),
            ]
        } else {
            vec![]
        };
        let spec = inst.spec.clone();
        out.push(inst);
        out.extend(variants.into_iter().map(|(label, polytope)| Instance {
            label,
            spec: spec.clone(),
            polytope,
        }));
    }
    Ok(out)
}

/// Runs the check pipeline on every instance in parallel; rows keep the
/// input order.
pub fn sweep_family(
    family: &str,
    instances: &[Instance],
    oracle: Option<usize>,
    limits: OracleLimits,
) -> SweepReport {
    let rows = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| {
            let points = inst.polytope.lattice_points().len();
            let oracle = oracle.filter(|&d| limits.check_fits(points, d));
            let mut row = SweepRow {
                index,
                label: inst.label.clone(),
                spec: inst.spec.clone(),
                polygon: None,
                vertex_count: inst.polytope.vertices().len(),
                lattice_point_count: points,
                passed: false,
                detail: None,
                oracle_connected: None,
            };
            match run_check(&inst.polytope, String::new(), oracle, limits) {
                Ok(report) => {
                    row.passed = report.passed;
                    row.oracle_connected = report.oracle.as_ref().map(|o| o.all_connected);
                    if !report.passed {
                        row.detail = Some(first_problem(&report));
                    }
                }
                Err(e) => row.detail = Some(e.to_string()),
            }
            row
        })
        .collect();
    SweepReport::new(family, rows)
}

fn first_problem(report: &super::report::CheckReport) -> String {
    if let Some(v) = report.smoothness.failing().next() {
        return format!("not smooth at {v}");
    }
    if let Some(c) = report.certificates.iter().find(|c| !c.passed) {
        return match &c.error {
            Some(e) => format!("{}: {e}", c.vertex),
            None => format!(
                "2-D fails at {} ({} unwitnessed)",
                c.vertex,
                c.unwitnessed.len()
            ),
        };
    }
    match &report.oracle {
        Some(o) => super::report::oracle_summary(o),
        None => "failed".into(),
    }
}

/// Basic diamonds at every vertex of random nonsingular polygons, each
/// construction re-verified by membership.
pub fn sweep_polygons(
    seed: u64,
    count: usize,
    max_edges: usize,
    max_coord: i64,
) -> Result<SweepReport> {
    if count > MAX_SWEEP_COUNT
        || !(3..=2 * MAX_SWEEP_VERTICES).contains(&max_edges)
        || !(1..=2 * MAX_SWEEP_COORD).contains(&max_coord)
    {
        return Err(Error::InvalidArgument(format!(
            "polygon sweep needs count <= {MAX_SWEEP_COUNT}, 3 <= max edges <= {}, 1 <= max coord <= {}",
            2 * MAX_SWEEP_VERTICES,
            2 * MAX_SWEEP_COORD
        )));
    }
    let polygons = random_nonsingular_polygons(seed, count, max_edges, max_coord);
    let rows = polygons
        .par_iter()
        .enumerate()
        .map(|(index, f)| {
            let detail = f
                .vertices()
                .iter()
                .find_map(|v| match find_basic_diamond(f, v) {
                    Ok(d) if diamond_verifies(f, &d) => None,
                    Ok(_) => Some(format!("{v}: diamond does not verify")),
                    Err(e) => Some(e.to_string()),
                });
            SweepRow {
                index,
                label: f
                    .vertices()
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(""),
                spec: None,
                polygon: Some(f.clone()),
                vertex_count: f.vertices().len(),
                lattice_point_count: f.lattice_points().len(),
                passed: detail.is_none(),
                detail,
                oracle_connected: None,
            }
        })
        .collect();
    Ok(SweepReport::new("polygons", rows))
}

/// Unimodular corners, exactly four lattice points, and both the diamond and
/// its translate to the base vertex inside `f`.
pub fn diamond_verifies(f: &LatticePolytope, d: &crate::polygon_tools::BasicDiamond) -> bool {
    let (u, w) = d.edge_vectors();
    det2(&u, &w).abs() == 1
        && convex_hull(&d.corners)
            .map(|s| s.lattice_points().len() == 4)
            .unwrap_or(false)
        && d.corners.iter().all(|c| f.contains(c))
        && d.shifted_corners().iter().all(|c| f.contains(c))
}
