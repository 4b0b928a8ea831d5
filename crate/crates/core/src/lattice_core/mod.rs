//! Exact integer geometry of lattice polygons and 3-polytopes.

mod affine;
mod point;
mod polytope;

pub use affine::{apply_map, canonical_form, normalize_at_vertex, AffineUnimodularMap};
pub use point::{cross, det, det2, det3, gcd, LatticePoint, MAX_COORD};
pub use polytope::{
    affine_dimension, convex_hull, minkowski_sum_of_points, Facet, LatticePolytope,
    SmoothnessReport, VertexCone, VertexSmoothness,
};
