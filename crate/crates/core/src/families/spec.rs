use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_core::{convex_hull, AffineUnimodularMap, LatticePoint, LatticePolytope};
use crate::polygon_tools::{is_nonsingular_polygon, same_normal_fan};

/// Corner of `kΔ₃`: the origin or `k·e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplexCorner {
    Origin,
    E1,
    E2,
    E3,
}

impl SimplexCorner {
    pub const ALL: [SimplexCorner; 4] = [Self::Origin, Self::E1, Self::E2, Self::E3];

    fn point(self, k: i64) -> LatticePoint {
        match self {
            Self::Origin => LatticePoint::new3(0, 0, 0),
            Self::E1 => LatticePoint::new3(k, 0, 0),
            Self::E2 => LatticePoint::new3(0, k, 0),
            Self::E3 => LatticePoint::new3(0, 0, k),
        }
    }
}

/// Corner of the prism over `kΔ₂`. Base corners sit at height 0, roof
/// corners above them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrismCorner {
    BaseOrigin,
    BaseE1,
    BaseE2,
    RoofOrigin,
    RoofE1,
    RoofE2,
}

impl PrismCorner {
    pub const ALL: [PrismCorner; 6] = [
        Self::BaseOrigin,
        Self::BaseE1,
        Self::BaseE2,
        Self::RoofOrigin,
        Self::RoofE1,
        Self::RoofE2,
    ];

    pub fn is_base(self) -> bool {
        matches!(self, Self::BaseOrigin | Self::BaseE1 | Self::BaseE2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cut<C> {
    pub corner: C,
    pub size: i64,
}

/// Parameters of one member of the three families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    /// `kΔ₃` with simplices `l·Δ₃` cut off at some corners.
    Case1 {
        k: i64,
        #[serde(default)]
        cuts: Vec<Cut<SimplexCorner>>,
    },
    /// Prism over `kΔ₂` (`k = base_scale`) whose vertical edges over
    /// `k·e1`, `k·e2` and the origin have lengths `edges[0..3]`, with at most
    /// one corner cut on the base and one on the roof.
    Case2 {
        base_scale: i64,
        edges: [i64; 3],
        #[serde(default)]
        cuts: Vec<Cut<PrismCorner>>,
    },
    /// `Conv{F0 × 0, F1 × 1}`.
    Case3 {
        f0: LatticePolytope,
        f1: LatticePolytope,
    },
}

impl FamilySpec {
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Case1 { .. } => "case1",
            Self::Case2 { .. } => "case2",
            Self::Case3 { .. } => "case3",
        }
    }

    /// Short label for tables.
    pub fn label(&self) -> String {
        match self {
            Self::Case1 { k, cuts } => format!("case1 k={k} cuts={}", cut_label(cuts)),
            Self::Case2 {
                base_scale,
                edges,
                cuts,
            } => format!(
                "case2 base={base_scale} edges={},{},{} cuts={}",
                edges[0],
                edges[1],
                edges[2],
                cut_label(cuts)
            ),
            Self::Case3 { f0, f1 } => {
                format!("case3 f0={} f1={}", vertex_label(f0), vertex_label(f1))
            }
        }
    }
}

fn cut_label<C: Serialize>(cuts: &[Cut<C>]) -> String {
    if cuts.is_empty() {
        return "-".into();
    }
    cuts.iter()
        .map(|c| {
            let corner = serde_json::to_value(&c.corner).expect("corner serializes");
            format!("{}:{}", corner.as_str().unwrap_or("?"), c.size)
        })
        .collect::<Vec<_>>()
        .join("+")
}

fn vertex_label(f: &LatticePolytope) -> String {
    f.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("")
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

/// The polytope described by `spec`; smooth with no interior lattice points.
pub fn build_family(spec: &FamilySpec) -> Result<LatticePolytope> {
    let q = match spec {
        FamilySpec::Case1 { k, cuts } => build_case1(*k, cuts)?,
        FamilySpec::Case2 {
            base_scale,
            edges,
            cuts,
        } => build_case2(*base_scale, *edges, cuts)?,
        FamilySpec::Case3 { f0, f1 } => build_case3(f0, f1)?,
    };
    if let Some(v) = q.is_smooth().failing().next() {
        return Err(invalid(format!("result is not smooth at {v}")));
    }
    if let Some(m) = q.interior_lattice_points().first() {
        return Err(invalid(format!(
            "result has the interior lattice point {m}"
        )));
    }
    Ok(q)
}

fn build_case1(k: i64, cuts: &[Cut<SimplexCorner>]) -> Result<LatticePolytope> {
    if !(1..=3).contains(&k) {
        return Err(invalid(format!("k = {k} must lie in 1..=3")));
    }
    let cuts = nonzero_cuts(cuts)?;
    for (i, a) in cuts.iter().enumerate() {
        for b in &cuts[i + 1..] {
            if a.corner == b.corner {
                return Err(invalid("each corner may be cut at most once"));
            }
            if a.size + b.size >= k {
                return Err(invalid(format!(
                    "cut sizes {} + {} must be < k = {k}",
                    a.size, b.size
                )));
            }
        }
        if a.size >= k {
            return Err(invalid(format!("cut size {} must be < k = {k}", a.size)));
        }
    }
    let simplex = convex_hull(&SimplexCorner::ALL.map(|c| c.point(k)))?;
    let cuts: Vec<(LatticePoint, i64)> = cuts.iter().map(|c| (c.corner.point(k), c.size)).collect();
    cut_corners(&simplex, &cuts)
}

fn build_case2(k: i64, edges: [i64; 3], cuts: &[Cut<PrismCorner>]) -> Result<LatticePolytope> {
    if !(1..=2).contains(&k) {
        return Err(invalid(format!("base_scale = {k} must be 1 or 2")));
    }
    if let Some(h) = edges.iter().find(|&&h| h < 1) {
        return Err(invalid(format!("edge length {h} must be >= 1")));
    }
    let [a, b, c] = edges;
    if (a - c) % k != 0 || (b - c) % k != 0 {
        return Err(invalid(format!(
            "edge length differences {} and {} must be divisible by base_scale = {k}",
            a - c,
            b - c
        )));
    }
    let cuts = nonzero_cuts(cuts)?;
    if cuts.iter().filter(|c| c.corner.is_base()).count() > 1 {
        return Err(invalid("at most one cut on the base"));
    }
    if cuts.iter().filter(|c| !c.corner.is_base()).count() > 1 {
        return Err(invalid("at most one cut on the roof"));
    }
    if let Some(cut) = cuts.iter().find(|c| c.size >= k) {
        return Err(invalid(format!(
            "cut size {} must be < base_scale = {k}",
            cut.size
        )));
    }
    let p3 = LatticePoint::new3;
    let corner = |pc: PrismCorner| match pc {
        PrismCorner::BaseOrigin => p3(0, 0, 0),
        PrismCorner::BaseE1 => p3(k, 0, 0),
        PrismCorner::BaseE2 => p3(0, k, 0),
        PrismCorner::RoofOrigin => p3(0, 0, c),
        PrismCorner::RoofE1 => p3(k, 0, a),
        PrismCorner::RoofE2 => p3(0, k, b),
    };
    let prism = convex_hull(&PrismCorner::ALL.map(corner))?;
    let cuts: Vec<(LatticePoint, i64)> = cuts.iter().map(|c| (corner(c.corner), c.size)).collect();
    cut_corners(&prism, &cuts)
}

fn build_case3(f0: &LatticePolytope, f1: &LatticePolytope) -> Result<LatticePolytope> {
    for (name, f) in [("f0", f0), ("f1", f1)] {
        if f.dim() != 2 {
            return Err(invalid(format!("{name} must be a polygon")));
        }
        if !is_nonsingular_polygon(f) {
            return Err(invalid(format!("{name} must be nonsingular")));
        }
    }
    if !same_normal_fan(f0, f1) {
        return Err(invalid("f0 and f1 must have parallel corresponding edges"));
    }
    let mut points: Vec<LatticePoint> = f0.vertices().iter().map(|v| v.lift3(0)).collect();
    points.extend(f1.vertices().iter().map(|v| v.lift3(1)));
    convex_hull(&points)
}

fn nonzero_cuts<C: Copy>(cuts: &[Cut<C>]) -> Result<Vec<Cut<C>>> {
    if let Some(c) = cuts.iter().find(|c| c.size < 0) {
        return Err(invalid(format!("cut size {} must be >= 0", c.size)));
    }
    Ok(cuts.iter().filter(|c| c.size > 0).copied().collect())
}

/// Cuts `l·Δ₃` off each listed smooth vertex (in the vertex's own edge
/// coordinates), replacing `v` by `v + l·g_i` for its edge generators.
///
/// Each cutting plane must strictly separate its three new points from
/// every other point of the result.
pub fn cut_corners(p: &LatticePolytope, cuts: &[(LatticePoint, i64)]) -> Result<LatticePolytope> {
    let mut charts = Vec::with_capacity(cuts.len());
    let mut new_points = Vec::with_capacity(cuts.len());
    for &(v, l) in cuts {
        let cone = p.vertex_cone(&v)?;
        if !cone.is_unimodular() {
            return Err(Error::NotSmoothVertex(v));
        }
        charts.push(AffineUnimodularMap::normalizing(v, &cone.generators)?);
        let pts = cone
            .generators
            .iter()
            .map(|g| g.checked_scale(l).and_then(|s| v.checked_add(s)));
        new_points.push(pts.collect::<Result<Vec<_>>>()?);
    }
    let cut_vertices: Vec<LatticePoint> = cuts.iter().map(|c| c.0).collect();
    let mut points: Vec<LatticePoint> = p
        .vertices()
        .iter()
        .filter(|v| !cut_vertices.contains(v))
        .copied()
        .collect();

    let kept = points.len();
    points.extend(new_points.iter().flatten());

    for (i, &(v, l)) in cuts.iter().enumerate() {
        let others = new_points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .flat_map(|(_, pts)| pts);
        for m in points[..kept].iter().chain(others) {
            if charts[i].apply_point(m)?.coord_sum() <= l {
                return Err(invalid(format!("cut of size {l} at {v} reaches {m}")));
            }
        }
    }
    convex_hull(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new3(x, y, z)
    }

    fn p2(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new2(x, y)
    }

    fn sorted(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
        v.sort();
        v
    }

    #[test]
    fn figure_one_polytope() {
        let spec = FamilySpec::Case1 {
            k: 3,
            cuts: vec![
                Cut {
                    corner: SimplexCorner::E1,
                    size: 1,
                },
                Cut {
                    corner: SimplexCorner::E3,
                    size: 1,
                },
            ],
        };
        let q = build_family(&spec).unwrap();
        let expected = sorted(vec![
            p3(0, 0, 0),
            p3(2, 0, 0),
            p3(2, 1, 0),
            p3(2, 0, 1),
            p3(0, 3, 0),
            p3(0, 1, 2),
            p3(1, 0, 2),
            p3(0, 0, 2),
        ]);
        assert_eq!(q.vertices(), expected.as_slice());
    }

    #[test]
    fn unit_prism() {
        let spec = FamilySpec::Case2 {
            base_scale: 1,
            edges: [1, 1, 1],
            cuts: vec![],
        };
        let q = build_family(&spec).unwrap();
        let expected = sorted(vec![
            p3(0, 0, 0),
            p3(1, 0, 0),
            p3(0, 1, 0),
            p3(1, 0, 1),
            p3(0, 1, 1),
            p3(0, 0, 1),
        ]);
        assert_eq!(q.vertices(), expected.as_slice());
    }

    #[test]
    fn cayley_of_squares_is_cube() {
        let sq = convex_hull(&[p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)]).unwrap();
        let q = build_family(&FamilySpec::Case3 {
            f0: sq.clone(),
            f1: sq,
        })
        .unwrap();
        assert_eq!(q.vertices().len(), 8);
        assert_eq!(q.lattice_points().len(), 8);
    }

    #[test]
    fn cut_doubled_simplex() {
        let spec = FamilySpec::Case1 {
            k: 2,
            cuts: vec![Cut {
                corner: SimplexCorner::Origin,
                size: 1,
            }],
        };
        let q = build_family(&spec).unwrap();
        // 10 points of 2Δ₃ minus the origin
        assert_eq!(q.lattice_points().len(), 9);
        assert_eq!(q.vertices().len(), 6);
    }

    #[test]
    fn doubled_base_prism_with_cut() {
        let spec = FamilySpec::Case2 {
            base_scale: 2,
            edges: [1, 3, 3],
            cuts: vec![Cut {
                corner: PrismCorner::BaseOrigin,
                size: 1,
            }],
        };
        let q = build_family(&spec).unwrap();
        assert_eq!(q.vertices().len(), 8);
        assert!(q.vertex_index(&p3(2, 0, 1)).is_some());
        assert!(q.vertex_index(&p3(0, 0, 0)).is_none());
    }

    #[test]
    fn parameter_errors() {
        let bad = |spec: FamilySpec| match build_family(&spec) {
            Err(Error::InvalidParameters(msg)) => msg,
            other => panic!("expected InvalidParameters, got {other:?}"),
        };
        let c1 = |k, cuts: Vec<(SimplexCorner, i64)>| FamilySpec::Case1 {
            k,
            cuts: cuts
                .into_iter()
                .map(|(corner, size)| Cut { corner, size })
                .collect(),
        };
        assert!(bad(c1(4, vec![])).contains("1..=3"));
        assert!(bad(c1(3, vec![(SimplexCorner::E1, 2), (SimplexCorner::E2, 1)])).contains("< k"));
        assert!(bad(c1(2, vec![(SimplexCorner::E1, 2)])).contains("< k"));
        let parity = FamilySpec::Case2 {
            base_scale: 2,
            edges: [1, 2, 1],
            cuts: vec![],
        };
        assert!(bad(parity).contains("divisible"));
        let two_base = FamilySpec::Case2 {
            base_scale: 2,
            edges: [3, 3, 3],
            cuts: vec![
                Cut {
                    corner: PrismCorner::BaseOrigin,
                    size: 1,
                },
                Cut {
                    corner: PrismCorner::BaseE1,
                    size: 1,
                },
            ],
        };
        assert!(bad(two_base).contains("base"));
        // the base and roof cuts meet on a vertical edge of length 2
        let crowded = FamilySpec::Case2 {
            base_scale: 2,
            edges: [2, 2, 2],
            cuts: vec![
                Cut {
                    corner: PrismCorner::BaseE1,
                    size: 1,
                },
                Cut {
                    corner: PrismCorner::RoofE1,
                    size: 1,
                },
            ],
        };
        assert!(bad(crowded).contains("reaches"));
        let tri = convex_hull(&[p2(0, 0), p2(1, 0), p2(0, 1)]).unwrap();
        let sq = convex_hull(&[p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)]).unwrap();
        assert!(bad(FamilySpec::Case3 { f0: tri, f1: sq }).contains("parallel"));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"family":"case2","base_scale":2,"edges":[1,3,3],"cuts":[{"corner":"base-origin","size":1}]}"#;
        let spec = FamilySpec::from_json(text).unwrap();
        assert_eq!(spec.to_json(), text);
        let sq = r#"{"family":"case3","f0":{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]},"f1":{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]}}"#;
        assert!(matches!(
            FamilySpec::from_json(sq).unwrap(),
            FamilySpec::Case3 { .. }
        ));
        let no_cuts = FamilySpec::from_json(r#"{"family":"case1","k":2}"#).unwrap();
        assert_eq!(no_cuts, FamilySpec::Case1 { k: 2, cuts: vec![] });
    }
}
