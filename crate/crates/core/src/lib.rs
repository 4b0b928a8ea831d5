//! Lattice-polytope tools for quadratic binomial presentations of smooth
//! projective toric 3-folds.
//!
//! The crate is organised bottom-up:
//!
//! * [`lattice_core`]: exact hulls, lattice point enumeration, vertex cones
//!   and unimodular maps in dimensions 2 and 3.
//! * [`polygon_tools`]: nonsingular polygons, Koelman's cubic criterion and
//!   basic diamonds.
//! * [`toric_ideal`]: affine chart presentations, 2-D certificates at
//!   vertices, the global quadric list and a fiber-graph generation oracle.
//! * [`families`]: generators and recognizers for the three families of
//!   smooth polarized 3-folds with vanishing adjoint.
//! * [`cli`]: the `quadrigen` command line front end.

pub mod cli;
pub mod error;
pub mod families;
pub mod lattice_core;
pub mod polygon_tools;
pub mod toric_ideal;

pub use error::{Error, Result};
pub use lattice_core::{convex_hull, LatticePoint, LatticePolytope};
