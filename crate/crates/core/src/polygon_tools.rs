//! Lattice polygons: nonsingularity, Koelman's criterion for cubic
//! generators, and basic diamonds near a vertex.

use std::cmp::Reverse;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_core::{
    det2, normalize_at_vertex, AffineUnimodularMap, LatticePoint, LatticePolytope,
};

fn require_polygon(f: &LatticePolytope) -> Result<()> {
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: f.dim(),
        });
    }
    Ok(())
}

/// Number of lattice points on the boundary: the sum of the lattice lengths
/// of the edges.
pub fn boundary_lattice_count(f: &LatticePolytope) -> Result<usize> {
    require_polygon(f)?;
    Ok(f.edge_lengths().iter().sum::<i64>() as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KoelmanVerdict {
    /// Every ample line bundle on a toric surface is normally generated.
    pub normally_generated: bool,
    pub needs_cubics: bool,
    pub interior_count: usize,
    pub boundary_count: usize,
}

/// The ideal of the polygon's surface needs cubic generators exactly when
/// the polygon has interior points and only three boundary points.
pub fn koelman_classify(f: &LatticePolytope) -> Result<KoelmanVerdict> {
    let boundary_count = boundary_lattice_count(f)?;
    let interior_count = f.interior_lattice_points().len();
    Ok(KoelmanVerdict {
        normally_generated: true,
        needs_cubics: interior_count > 0 && boundary_count == 3,
        interior_count,
        boundary_count,
    })
}

pub fn is_nonsingular_polygon(f: &LatticePolytope) -> bool {
    f.dim() == 2
        && f.vertices()
            .iter()
            .all(|v| f.vertex_cone(v).map(|c| c.is_unimodular()).unwrap_or(false))
}

/// Primitive edge directions in counter-clockwise order, starting with the
/// edge leaving the first stored vertex.
pub fn edge_directions(f: &LatticePolytope) -> Vec<LatticePoint> {
    let vs = f.vertices();
    (0..vs.len())
        .map(|i| {
            (vs[(i + 1) % vs.len()] - vs[i])
                .primitive()
                .expect("distinct vertices")
        })
        .collect()
}

/// Edge directions rotated to the lexicographically least starting point.
/// Two polygons have the same normal fan iff their signatures agree.
pub fn normal_fan_signature(f: &LatticePolytope) -> Vec<LatticePoint> {
    let dirs = edge_directions(f);
    (0..dirs.len())
        .map(|s| {
            let mut r = dirs.clone();
            r.rotate_left(s);
            r
        })
        .min_by(|a, b| {
            a.iter()
                .map(|p| p.coords().to_vec())
                .cmp(b.iter().map(|p| p.coords().to_vec()))
        })
        .unwrap_or_default()
}

pub fn same_normal_fan(f: &LatticePolytope, g: &LatticePolytope) -> bool {
    normal_fan_signature(f) == normal_fan_signature(g)
}

/// Vertex at maximal Euclidean distance from `u0`; ties go to the
/// graded-lex smallest vertex.
pub fn farthest_vertex(f: &LatticePolytope, u0: &LatticePoint) -> Result<LatticePoint> {
    require_polygon(f)?;
    f.vertex_index(u0).ok_or(Error::NotAVertex(*u0))?;
    let dist2 = |v: &LatticePoint| {
        let d = *v - *u0;
        d.dot(&d)
    };
    Ok(*f
        .vertices()
        .iter()
        .max_by_key(|v| (dist2(v), Reverse(**v)))
        .expect("nonempty"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiamondCase {
    /// An edge ending at the diamond's vertex is parallel to an edge at the base vertex.
    ParallelEdge,
    /// The parallel edge was found after exchanging the two axes.
    ParallelEdgeSwapped,
    /// No parallel edge: the diamond sits at the farthest vertex.
    FarthestVertex,
}

/// A lattice parallelogram with exactly four lattice points,
/// `{t, t - u, t - w, t - u - w}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicDiamond {
    /// Corners in the order `t, t - u, t - w, t - u - w`.
    pub corners: [LatticePoint; 4],
    /// The polygon vertex `t`.
    pub distinguished_vertex: LatticePoint,
    /// The corner `t - u - w` opposite to `t`.
    pub opposite: LatticePoint,
    /// The polygon vertex the construction was anchored at.
    pub base_vertex: LatticePoint,
    pub case: DiamondCase,
    pub opposite_interior: bool,
}

impl BasicDiamond {
    /// The diamond translated so that its opposite corner lands on the base
    /// vertex.
    pub fn shifted_corners(&self) -> [LatticePoint; 4] {
        self.corners.map(|c| c - self.opposite + self.base_vertex)
    }

    /// The two edge vectors `u`, `w` out of the opposite corner.
    pub fn edge_vectors(&self) -> (LatticePoint, LatticePoint) {
        let t = self.distinguished_vertex;
        (t - self.corners[1], t - self.corners[2])
    }
}

struct LocalDiamond {
    top: LatticePoint,
    u: LatticePoint,
    w: LatticePoint,
}

/// Index `i` of an upward vertical edge `vs[i] -> vs[i + 1]`.
fn upward_vertical_edge(vs: &[LatticePoint]) -> Option<usize> {
    let n = vs.len();
    (0..n).find(|&i| {
        let d = vs[(i + 1) % n] - vs[i];
        d.x() == 0 && d.y() > 0
    })
}

fn parallel_edge_diamond(
    h: &LatticePolytope,
    anchor: LatticePoint,
    i: usize,
) -> Result<LocalDiamond> {
    let vs = h.vertices();
    let n = vs.len();
    let top = vs[(i + 1) % n];
    let next = vs[(i + 2) % n];
    let gd = (top - next).primitive().expect("distinct vertices");
    if gd.x() != 1 {
        return Err(Error::DiamondConstruction {
            vertex: anchor,
            reason: format!(
                "edge after the parallel edge has direction {gd}, expected first coordinate 1"
            ),
        });
    }
    let delta = gd.y();
    let u = LatticePoint::new2(0, 1);
    let w = if delta >= 0 {
        LatticePoint::new2(1, delta)
    } else {
        LatticePoint::new2(1, 0)
    };
    Ok(LocalDiamond { top, u, w })
}

fn farthest_vertex_diamond(h: &LatticePolytope, anchor: LatticePoint) -> Result<LocalDiamond> {
    let origin = LatticePoint::origin(2);
    let top = farthest_vertex(h, &origin)?;
    let vs = h.vertices();
    let n = vs.len();
    let t = h.vertex_index(&top).expect("vertex");
    let u = (top - vs[(t + n - 1) % n])
        .primitive()
        .expect("distinct vertices");
    let w = (top - vs[(t + 1) % n])
        .primitive()
        .expect("distinct vertices");
    if [u.x(), u.y(), w.x(), w.y()].iter().any(|&c| c < 1) {
        return Err(Error::DiamondConstruction {
            vertex: anchor,
            reason: format!(
                "edge directions {u} and {w} at the farthest vertex {top} are not both positive"
            ),
        });
    }
    Ok(LocalDiamond { top, u, w })
}

/// Finds a basic diamond `S ⊆ F` at a vertex chosen relative to
/// `origin_vertex`, such that `S` translated by `origin_vertex - m'` (with
/// `m'` the corner opposite the chosen vertex) still lies in `F`.
///
/// The polygon is first normalized so that `origin_vertex` is the origin and
/// its two edges run along the positive axes. If another edge is parallel to
/// one of those two, the diamond sits at the upper end of that edge; else it
/// sits at the vertex farthest from the origin. The result is mapped back to
/// the input coordinates.
pub fn find_basic_diamond(
    f: &LatticePolytope,
    origin_vertex: &LatticePoint,
) -> Result<BasicDiamond> {
    require_polygon(f)?;
    f.vertex_index(origin_vertex)
        .ok_or(Error::NotAVertex(*origin_vertex))?;
    if !is_nonsingular_polygon(f) {
        return Err(Error::NotNonsingular);
    }
    if f.interior_lattice_points().is_empty() {
        return Err(Error::NoInteriorPoints);
    }
    let (to_local, local) = normalize_at_vertex(f, origin_vertex)?;

    let swap = AffineUnimodularMap::new(&[vec![0, 1], vec![1, 0]], LatticePoint::origin(2))?;
    let (map, h, diamond, case) = if let Some(i) = upward_vertical_edge(local.vertices()) {
        let d = parallel_edge_diamond(&local, *origin_vertex, i)?;
        (to_local, local, d, DiamondCase::ParallelEdge)
    } else {
        let swapped = swap.apply(&local)?;
        if let Some(i) = upward_vertical_edge(swapped.vertices()) {
            let d = parallel_edge_diamond(&swapped, *origin_vertex, i)?;
            (
                swap.compose(&to_local)?,
                swapped,
                d,
                DiamondCase::ParallelEdgeSwapped,
            )
        } else {
            let d = farthest_vertex_diamond(&local, *origin_vertex)?;
            (to_local, local, d, DiamondCase::FarthestVertex)
        }
    };

    let LocalDiamond { top, u, w } = diamond;
    let fail = |reason: &str| Error::DiamondConstruction {
        vertex: *origin_vertex,
        reason: reason.to_string(),
    };
    if det2(&u, &w).abs() != 1 {
        return Err(fail("edge vectors do not span a unimodular parallelogram"));
    }
    let local_corners = [top, top - u, top - w, top - u - w];
    let opposite = local_corners[3];
    if !local_corners.iter().all(|c| h.contains(c)) {
        return Err(fail("diamond leaves the polygon"));
    }
    // the base vertex is the local origin
    if !local_corners.iter().all(|c| h.contains(&(*c - opposite))) {
        return Err(fail("translated diamond leaves the polygon"));
    }
    let opposite_interior = h.contains_strictly(&opposite);

    let back = map.inverse()?;
    let corners = local_corners.map(|c| {
        back.apply_point(&c)
            .expect("point of the polygon maps back")
    });
    Ok(BasicDiamond {
        corners,
        distinguished_vertex: corners[0],
        opposite: corners[3],
        base_vertex: *origin_vertex,
        case,
        opposite_interior,
    })
}
