use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::families::{classify, ClassificationResult};
use crate::lattice_core::{LatticePoint, LatticePolytope, SmoothnessReport};
use crate::polygon_tools::{koelman_classify, KoelmanVerdict};
use crate::toric_ideal::{
    check_2d_on_points, fiber_graph_oracle_with_limits, fujita_counts, DecompositionCertificate,
    FiberGraphReport, FujitaCounts, OracleLimits, QuadraticPresentation, Witness,
};

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateVerdict {
    pub vertex: LatticePoint,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub unwitnessed: Vec<LatticePoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadricList {
    pub count: usize,
    pub point_order: Vec<LatticePoint>,
    pub binomials: Vec<String>,
}

impl From<&QuadraticPresentation> for QuadricList {
    fn from(q: &QuadraticPresentation) -> Self {
        Self {
            count: q.binomials.len(),
            point_order: q.point_order.clone(),
            binomials: q.binomials.iter().map(|b| q.render(b)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub input_digest: String,
    pub oracle_degree: Option<usize>,
    pub vertex_count: usize,
    pub lattice_point_count: usize,
    pub smoothness: SmoothnessReport,
    pub adjoint_vanishes: bool,
    pub classification: ClassificationResult,
    pub certificates: Vec<CertificateVerdict>,
    pub quadrics: Option<QuadricList>,
    pub fujita: Option<FujitaCounts>,
    pub oracle: Option<FiberGraphReport>,
    pub passed: bool,
    pub exit_status: i32,
}

/// Runs smoothness, adjoint vanishing, classification, 2-D certificates at
/// every vertex, the quadric list and optionally the fiber-graph oracle.
///
/// Fails only if the requested oracle exceeds `limits`.
pub fn run_check(
    p: &LatticePolytope,
    input_digest: String,
    oracle: Option<usize>,
    limits: OracleLimits,
) -> Result<CheckReport> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: p.dim(),
        });
    }
    let points = p.lattice_points();
    let oracle_report = match oracle {
        Some(d) => Some(fiber_graph_oracle_with_limits(p, d, limits)?),
        None => None,
    };
    let smoothness = p.is_smooth();
    let adjoint_vanishes = p.interior_lattice_points().is_empty();
    let outcomes: Vec<Result<DecompositionCertificate>> = p
        .vertices()
        .iter()
        .map(|v| check_2d_on_points(p, &points, v))
        .collect();
    let quadrics = outcomes
        .iter()
        .cloned()
        .collect::<Result<Vec<_>>>()
        .ok()
        .map(|certs| {
            QuadricList::from(&QuadraticPresentation::from_certificates(
                points.clone(),
                &certs,
            ))
        });
    let certificates: Vec<CertificateVerdict> = p
        .vertices()
        .iter()
        .zip(outcomes)
        .map(|(v, outcome)| match outcome {
            Ok(c) => CertificateVerdict {
                vertex: *v,
                passed: true,
                witnesses: c.witnesses,
                unwitnessed: vec![],
                error: None,
            },
            Err(Error::PropertyFails { unwitnessed, .. }) => CertificateVerdict {
                vertex: *v,
                passed: false,
                witnesses: vec![],
                unwitnessed,
                error: None,
            },
            Err(e) => CertificateVerdict {
                vertex: *v,
                passed: false,
                witnesses: vec![],
                unwitnessed: vec![],
                error: Some(e.to_string()),
            },
        })
        .collect();
    let certified = certificates.iter().all(|c| c.passed);
    let fujita = fujita_counts(p).ok();
    let oracle_ok = oracle_report.as_ref().is_none_or(|r| r.all_connected);
    // adjoint vanishing describes the minimal polarization only; larger
    // polarizations of the same variety have interior points
    let passed = smoothness.smooth && certified && oracle_ok;
    Ok(CheckReport {
        command: "check",
        input_digest,
        oracle_degree: oracle,
        vertex_count: p.vertices().len(),
        lattice_point_count: points.len(),
        classification: classify(p),
        smoothness,
        adjoint_vanishes,
        certificates,
        quadrics,
        fujita,
        oracle: oracle_report,
        passed,
        exit_status: if passed { 0 } else { 1 },
    })
}

impl CheckReport {
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        out += &format!("input      {}\n", self.input_digest);
        out += &format!(
            "vertices   {}  lattice points {}\n",
            self.vertex_count, self.lattice_point_count
        );
        out += &format!("smooth     {}\n", mark(self.smoothness.smooth));
        for v in self.smoothness.vertices.iter().filter(|v| !v.smooth) {
            out += &format!("  singular vertex {}\n", v.vertex);
        }
        out += &format!(
            "adjoint    {}\n",
            if self.adjoint_vanishes {
                "vanishes"
            } else {
                "interior points"
            }
        );
        let family = serde_json::to_value(self.classification.family).expect("family serializes");
        out += &format!("family     {}", family.as_str().unwrap_or("?"));
        if let Some(spec) = &self.classification.parameters {
            out += &format!("  ({})", spec.label());
        }
        out += "\n";
        let good = self.certificates.iter().filter(|c| c.passed).count();
        out += &format!(
            "2-D        {good}/{} vertices certified\n",
            self.certificates.len()
        );
        for c in self.certificates.iter().filter(|c| !c.passed) {
            match &c.error {
                Some(e) => out += &format!("  {}: {e}\n", c.vertex),
                None => {
                    let pts: Vec<String> = c.unwitnessed.iter().map(|m| m.to_string()).collect();
                    out += &format!("  {}: no witness for {}\n", c.vertex, pts.join(" "));
                }
            }
        }
        if let Some(q) = &self.quadrics {
            out += &format!("quadrics   {}\n", q.count);
        }
        if let Some(f) = &self.fujita {
            out += &format!(
                "fujita     chi={} genus={} degree={} chi>=genus+3: {}\n",
                f.chi, f.genus, f.degree, f.quadric_by_fujita
            );
        }
        if let Some(o) = &self.oracle {
            out += &format!(
                "oracle     degree <= {}: {}\n",
                o.degree_bound,
                oracle_summary(o)
            );
        }
        out += &format!("result     {}\n", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

pub(crate) fn oracle_summary(o: &FiberGraphReport) -> String {
    match &o.first_failure {
        None => "all fibers connected".into(),
        Some(f) => {
            let show = |ms: &[LatticePoint]| {
                ms.iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            };
            format!(
                "disconnected fiber in degree {} at {}: {} vs {}",
                f.degree,
                f.sum,
                show(&f.first),
                show(&f.second)
            )
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KoelmanReport {
    pub command: &'static str,
    pub input_digest: String,
    pub verdict: KoelmanVerdict,
    pub lattice_point_count: usize,
    pub oracle: Option<FiberGraphReport>,
    /// Whether the oracle's connectivity matches the verdict.
    pub oracle_agrees: Option<bool>,
    pub exit_status: i32,
}

pub fn run_koelman(
    f: &LatticePolytope,
    input_digest: String,
    oracle: Option<usize>,
    limits: OracleLimits,
) -> Result<KoelmanReport> {
    let verdict = koelman_classify(f)?;
    let oracle_report = match oracle {
        Some(d) => Some(fiber_graph_oracle_with_limits(f, d, limits)?),
        None => None,
    };
    // quadratic moves alone cannot connect the cubic fibers
    let oracle_agrees = oracle_report.as_ref().map(|r| {
        let expect_connected = !verdict.needs_cubics || r.degree_bound < 3;
        r.all_connected == expect_connected
    });
    let exit_status = if oracle_agrees == Some(false) { 1 } else { 0 };
    Ok(KoelmanReport {
        command: "koelman",
        input_digest,
        verdict,
        lattice_point_count: f.lattice_points().len(),
        oracle: oracle_report,
        oracle_agrees,
        exit_status,
    })
}

impl KoelmanReport {
    pub fn pretty(&self) -> String {
        let v = &self.verdict;
        let mut out = format!("input      {}\n", self.input_digest);
        out += &format!(
            "points     {} ({} interior, {} boundary)\n",
            self.lattice_point_count, v.interior_count, v.boundary_count
        );
        out += &format!("normally generated  {}\n", v.normally_generated);
        out += &format!("needs cubics        {}\n", v.needs_cubics);
        if let Some(o) = &self.oracle {
            out += &format!(
                "oracle     degree <= {}: {}\n",
                o.degree_bound,
                oracle_summary(o)
            );
            out += &format!("agrees     {}\n", self.oracle_agrees.unwrap_or(false));
        }
        out
    }
}
