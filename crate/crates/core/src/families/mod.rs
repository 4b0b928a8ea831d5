//! The three families of polarized toric 3-folds with vanishing adjoint
//! bundle: clipped simplices, clipped prisms and Cayley polytopes of two
//! polygons with a common normal fan.

mod cayley;
mod classify;
mod enumerate;
mod spec;

pub use cayley::cayley_slices;
pub use classify::{classify, ClassificationResult, Family};
pub use enumerate::{
    case1_specs, case2_specs, case3_specs, nonsingular_polygons, random_nonsingular_polygons,
    same_fan_pairs,
};
pub use spec::{build_family, cut_corners, Cut, FamilySpec, PrismCorner, SimplexCorner};

use crate::lattice_core::LatticePolytope;

/// True iff `q` has no interior lattice points.
pub fn adjoint_vanishes(q: &LatticePolytope) -> bool {
    q.interior_lattice_points().is_empty()
}
