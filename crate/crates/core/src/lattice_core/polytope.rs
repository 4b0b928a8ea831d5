use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{cross, det, det2, det3, LatticePoint, MAX_COORD};
use crate::error::{Error, Result};

/// The half-space `normal · x >= offset`; `normal` is primitive and points
/// into the polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Facet {
    pub normal: LatticePoint,
    pub offset: i128,
}

impl Facet {
    /// Lattice distance of `p` from the supporting hyperplane (0 on it).
    #[inline]
    pub fn slack(&self, p: &LatticePoint) -> i128 {
        self.normal.dot(p) - self.offset
    }
}

/// A full-dimensional convex lattice polytope in Z² or Z³.
///
/// Vertices are irredundant. In dimension 3 they are stored in graded-lex
/// order; in dimension 2 they run counter-clockwise starting at the
/// graded-lex smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
    edges: Vec<(usize, usize)>,
}

/// Primitive edge directions at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCone {
    pub apex: LatticePoint,
    pub generators: Vec<LatticePoint>,
}

impl VertexCone {
    /// Exactly `dim` generators forming a Z-basis.
    pub fn is_unimodular(&self) -> bool {
        self.generators.len() == self.apex.dim() && det(&self.generators).abs() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSmoothness {
    pub vertex: LatticePoint,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub vertices: Vec<VertexSmoothness>,
    pub smooth: bool,
}

impl SmoothnessReport {
    pub fn failing(&self) -> impl Iterator<Item = &LatticePoint> {
        self.vertices
            .iter()
            .filter(|v| !v.smooth)
            .map(|v| &v.vertex)
    }
}

/// Hull of all pairwise sums `a + b`; either set may be lower-dimensional
/// as long as the sum is full-dimensional.
pub fn minkowski_sum_of_points(a: &[LatticePoint], b: &[LatticePoint]) -> Result<LatticePolytope> {
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            if p.dim() != q.dim() {
                return Err(Error::DimensionMismatch {
                    expected: p.dim(),
                    got: q.dim(),
                });
            }
            sums.push(p.checked_add(*q)?);
        }
    }
    convex_hull(&sums)
}

/// Dimension of the affine span of `points` (all of one ambient dimension).
pub fn affine_dimension(points: &[LatticePoint]) -> usize {
    let Some(&p0) = points.first() else { return 0 };
    let mut basis: Vec<LatticePoint> = Vec::new();
    for &p in points {
        let d = p - p0;
        let independent = match basis.len() {
            0 => !d.is_origin(),
            1 => match p0.dim() {
                2 => det2(&basis[0], &d) != 0,
                _ => cross(&basis[0], &d).is_some_and(|c| !c.is_origin()),
            },
            2 => p0.dim() == 3 && det3(&basis[0], &basis[1], &d) != 0,
            _ => false,
        };
        if independent {
            basis.push(d);
            if basis.len() == p0.dim() {
                break;
            }
        }
    }
    basis.len()
}

/// Convex hull of a finite point set.
///
/// Fails with `DegenerateInput` when the points do not span the ambient space.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
        p.check_bound(MAX_COORD)?;
    }
    let unique: Vec<LatticePoint> = points
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let span = affine_dimension(&unique);
    if span < dim {
        return Err(Error::DegenerateInput { span, ambient: dim });
    }
    match dim {
        2 => Ok(hull2(&unique)),
        3 => Ok(hull3(&unique)),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn orient(o: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> i128 {
    det2(&(*a - *o), &(*b - *o))
}

// Andrew's monotone chain; collinear boundary points are dropped.
fn hull2(points: &[LatticePoint]) -> LatticePolytope {
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| (p.x(), p.y()));
    let mut chain: Vec<LatticePoint> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = chain.len();
        let iter: Box<dyn Iterator<Item = &LatticePoint>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while chain.len() >= start + 2
                && orient(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= 0
            {
                chain.pop();
            }
            chain.push(*p);
        }
        chain.pop();
    }
    let start = chain
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| **p)
        .map(|(i, _)| i)
        .unwrap_or(0);
    chain.rotate_left(start);
    polygon_from_ccw(chain)
}

/// Builds a polygon from vertices already known to be irredundant and in
/// counter-clockwise order starting at the graded-lex minimum.
fn polygon_from_ccw(vertices: Vec<LatticePoint>) -> LatticePolytope {
    let n = vertices.len();
    let facets = (0..n)
        .map(|i| {
            let a = vertices[i];
            let d = vertices[(i + 1) % n] - a;
            let normal = LatticePoint::new2(-d.y(), d.x())
                .primitive()
                .expect("distinct vertices");
            Facet {
                normal,
                offset: normal.dot(&a),
            }
        })
        .collect();
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    LatticePolytope {
        dim: 2,
        vertices,
        facets,
        edges,
    }
}

// Exhaustive scan over point triples; a triple spans a facet when every
// point lies weakly on one side of its plane.
fn hull3(points: &[LatticePoint]) -> LatticePolytope {
    let n = points.len();
    let mut facets: BTreeSet<Facet> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let dj = points[j] - points[i];
            for k in j + 1..n {
                let (a, b, c) = (&points[i], &points[j], &points[k]);
                if facets
                    .iter()
                    .any(|f| f.slack(a) == 0 && f.slack(b) == 0 && f.slack(c) == 0)
                {
                    continue;
                }
                let Some(normal) = cross(&dj, &(points[k] - points[i])).and_then(|n| n.primitive())
                else {
                    continue;
                };
                let offset = normal.dot(a);
                let (mut pos, mut neg) = (false, false);
                for p in points {
                    let s = normal.dot(p) - offset;
                    pos |= s > 0;
                    neg |= s < 0;
                    if pos && neg {
                        break;
                    }
                }
                match (pos, neg) {
                    (true, false) => {
                        facets.insert(Facet { normal, offset });
                    }
                    (false, true) => {
                        facets.insert(Facet {
                            normal: -normal,
                            offset: -offset,
                        });
                    }
                    _ => {}
                }
            }
        }
    }
    let facets: Vec<Facet> = facets.into_iter().collect();
    let vertices: Vec<LatticePoint> = points
        .iter()
        .copied()
        .filter(|p| {
            let normals: Vec<LatticePoint> = facets
                .iter()
                .filter(|f| f.slack(p) == 0)
                .map(|f| f.normal)
                .collect();
            affine_dimension(
                &std::iter::once(LatticePoint::origin(3))
                    .chain(normals)
                    .collect::<Vec<_>>(),
            ) == 3
        })
        .collect();
    let incidence: Vec<Vec<usize>> = vertices
        .iter()
        .map(|v| {
            (0..facets.len())
                .filter(|&f| facets[f].slack(v) == 0)
                .collect()
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let shared = incidence[a]
                .iter()
                .filter(|f| incidence[b].contains(f))
                .count();
            if shared >= 2 {
                edges.push((a, b));
            }
        }
    }
    LatticePolytope {
        dim: 3,
        vertices,
        facets,
        edges,
    }
}

impl LatticePolytope {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    #[inline]
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Edges as pairs of indices into `vertices()`.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_index(&self, v: &LatticePoint) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim && self.facets.iter().all(|f| f.slack(p) >= 0)
    }

    pub fn contains_strictly(&self, p: &LatticePoint) -> bool {
        p.dim() == self.dim && self.facets.iter().all(|f| f.slack(p) > 0)
    }

    fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            let mut l = [0i64; 3];
            let mut h = [0i64; 3];
            for k in 0..self.dim {
                l[k] = lo.coords()[k].min(v.coords()[k]);
                h[k] = hi.coords()[k].max(v.coords()[k]);
            }
            lo = LatticePoint::from_slice(&l[..self.dim]).expect("dim 2 or 3");
            hi = LatticePoint::from_slice(&h[..self.dim]).expect("dim 2 or 3");
        }
        (lo, hi)
    }

    fn scan(&self, keep: impl Fn(&LatticePoint) -> bool) -> Vec<LatticePoint> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        if self.dim == 2 {
            for x in lo.x()..=hi.x() {
                for y in lo.y()..=hi.y() {
                    let p = LatticePoint::new2(x, y);
                    if keep(&p) {
                        out.push(p);
                    }
                }
            }
        } else {
            for x in lo.x()..=hi.x() {
                for y in lo.y()..=hi.y() {
                    for z in lo.z()..=hi.z() {
                        let p = LatticePoint::new3(x, y, z);
                        if keep(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// All lattice points of the polytope in graded-lex order.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.scan(|p| self.contains(p))
    }

    /// Lattice points strictly inside every facet, in graded-lex order.
    pub fn interior_lattice_points(&self) -> Vec<LatticePoint> {
        self.scan(|p| self.contains_strictly(p))
    }

    /// Hull of all sums `v + q` with `v` a vertex and `q` in `points`.
    ///
    /// `points` may be lower-dimensional (a single point translates).
    pub fn minkowski_sum_points(&self, points: &[LatticePoint]) -> Result<LatticePolytope> {
        let mut sums = Vec::with_capacity(self.vertices.len() * points.len());
        for q in points {
            if q.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: q.dim(),
                });
            }
            for v in &self.vertices {
                sums.push(v.checked_add(*q)?);
            }
        }
        convex_hull(&sums)
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<LatticePolytope> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        self.minkowski_sum_points(&other.vertices)
    }

    pub fn translate(&self, t: LatticePoint) -> Result<LatticePolytope> {
        self.minkowski_sum_points(&[t])
    }

    /// The dilate `k·P`.
    pub fn dilate(&self, k: i64) -> Result<LatticePolytope> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "dilation factor must be >= 1, got {k}"
            )));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                let w = v.checked_scale(k)?;
                w.check_bound(MAX_COORD)?;
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.normal,
                offset: f.offset * k as i128,
            })
            .collect();
        Ok(LatticePolytope {
            dim: self.dim,
            vertices,
            facets,
            edges: self.edges.clone(),
        })
    }

    /// Vertices adjacent to vertex `i` along an edge.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Primitive edge directions at `v`.
    ///
    /// In dimension 2 the generators are `[towards next ccw vertex, towards
    /// previous]`, so a smooth vertex gives determinant +1. In dimension 3
    /// they are sorted in decreasing lexicographic order, so the standard
    /// basis comes out as e1, e2, e3.
    pub fn vertex_cone(&self, v: &LatticePoint) -> Result<VertexCone> {
        let i = self.vertex_index(v).ok_or(Error::NotAVertex(*v))?;
        let generators = if self.dim == 2 {
            let n = self.vertices.len();
            let next = self.vertices[(i + 1) % n];
            let prev = self.vertices[(i + n - 1) % n];
            vec![
                (next - *v).primitive().expect("distinct"),
                (prev - *v).primitive().expect("distinct"),
            ]
        } else {
            let mut g: Vec<LatticePoint> = self
                .neighbors(i)
                .into_iter()
                .map(|j| (self.vertices[j] - *v).primitive().expect("distinct"))
                .collect();
            g.sort_by(|a, b| b.coords().cmp(a.coords()));
            g
        };
        Ok(VertexCone {
            apex: *v,
            generators,
        })
    }

    pub fn is_smooth(&self) -> SmoothnessReport {
        let vertices: Vec<VertexSmoothness> = self
            .vertices
            .iter()
            .map(|v| VertexSmoothness {
                vertex: *v,
                smooth: self
                    .vertex_cone(v)
                    .map(|c| c.is_unimodular())
                    .unwrap_or(false),
            })
            .collect();
        let smooth = vertices.iter().all(|v| v.smooth);
        SmoothnessReport { vertices, smooth }
    }

    /// Lattice length of each edge (number of lattice segments on it).
    pub fn edge_lengths(&self) -> Vec<i64> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[b] - self.vertices[a]).content())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

impl LatticePolytope {
    /// Parses `{"dim": 2|3, "vertices": [[..], ..]}`. Facets are always
    /// recomputed from the listed points.
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polytope serializes")
    }
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson {
            dim: self.dim,
            vertices: self.vertices.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolytopeJson::deserialize(deserializer)?;
        if let Some(bad) = raw.vertices.iter().find(|v| v.dim() != raw.dim) {
            return Err(D::Error::custom(format!(
                "vertex {bad} does not have dimension {}",
                raw.dim
            )));
        }
        convex_hull(&raw.vertices).map_err(D::Error::custom)
    }
}
