use std::cell::OnceCell;
use std::collections::BTreeSet;

use serde::Serialize;

use super::adjoint_vanishes;
use super::cayley::{parallel_facet_pairs, slices_along};
use super::enumerate::{case1_specs, case2_candidates};
use super::spec::{build_family, FamilySpec};
use crate::lattice_core::{canonical_form, LatticePoint, LatticePolytope};
use crate::polygon_tools::{is_nonsingular_polygon, same_normal_fan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Case1,
    Case2,
    Case3,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub family: Family,
    /// A spec whose polytope is unimodularly equivalent to the input.
    pub parameters: Option<FamilySpec>,
    pub adjoint_vanishes: bool,
}

/// Recognizes the family of `q` up to unimodular equivalence. Overlapping
/// members are reported as Case1 before Case2 before Case3.
pub fn classify(q: &LatticePolytope) -> ClassificationResult {
    let unknown = |adjoint_vanishes| ClassificationResult {
        family: Family::Unknown,
        parameters: None,
        adjoint_vanishes,
    };
    if q.dim() != 3 {
        return unknown(false);
    }
    let adjoint = adjoint_vanishes(q);
    if !adjoint || !q.is_smooth().smooth {
        return unknown(adjoint);
    }
    let found = |family, spec| ClassificationResult {
        family,
        parameters: Some(spec),
        adjoint_vanishes: adjoint,
    };
    let target = Target::new(q);
    if let Some(spec) = case1_specs().into_iter().find(|s| target.matches(s)) {
        return found(Family::Case1, spec);
    }
    if let Some(spec) = case2_candidates(&target.candidate_heights())
        .into_iter()
        .find(|s| target.matches(s))
    {
        return found(Family::Case2, spec);
    }
    if let Some(spec) = recognize_case3(q) {
        return found(Family::Case3, spec);
    }
    unknown(adjoint)
}

struct Target<'a> {
    q: &'a LatticePolytope,
    vertex_count: usize,
    point_count: usize,
    edge_lengths: Vec<i64>,
    canonical: OnceCell<Option<Vec<LatticePoint>>>,
}

impl<'a> Target<'a> {
    fn new(q: &'a LatticePolytope) -> Self {
        let mut edge_lengths = q.edge_lengths();
        edge_lengths.sort_unstable();
        Self {
            q,
            vertex_count: q.vertices().len(),
            point_count: q.lattice_points().len(),
            edge_lengths,
            canonical: OnceCell::new(),
        }
    }

    fn matches(&self, spec: &FamilySpec) -> bool {
        if shape_counts(spec).is_some_and(|counts| counts != (self.vertex_count, self.point_count))
        {
            return false;
        }
        let Ok(member) = build_family(spec) else {
            return false;
        };
        if member.vertices().len() != self.vertex_count {
            return false;
        }
        let mut lengths = member.edge_lengths();
        lengths.sort_unstable();
        lengths == self.edge_lengths
            && canonical_form(&member) == *self.canonical.get_or_init(|| canonical_form(self.q))
    }

    /// Vertical edges of a clipped prism are at most 2 shorter than the
    /// uncut ones, so the uncut heights lie within 2 of some edge length.
    fn candidate_heights(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.edge_lengths.iter().flat_map(|&l| l..=l + 2).collect();
        set.into_iter().collect()
    }
}

/// `(vertices, lattice points)` of a valid Case1 or Case2 spec, without
/// building it.
fn shape_counts(spec: &FamilySpec) -> Option<(usize, usize)> {
    match spec {
        FamilySpec::Case1 { k, cuts } => {
            let cut: i64 = cuts
                .iter()
                .map(|c| simplex_points(c.size) - triangle_points(c.size))
                .sum();
            let n = cuts.iter().filter(|c| c.size > 0).count();
            Some((4 + 2 * n, (simplex_points(*k) - cut) as usize))
        }
        FamilySpec::Case2 {
            base_scale: k,
            edges: [a, b, c],
            cuts,
        } => {
            // vertical segment over each base point, lengths affine in (x, y)
            let mut points = 0;
            for x in 0..=*k {
                for y in 0..=*k - x {
                    points += c + ((a - c) * x + (b - c) * y) / k + 1;
                }
            }
            let cut: i64 = cuts
                .iter()
                .map(|c| simplex_points(c.size) - triangle_points(c.size))
                .sum();
            let n = cuts.iter().filter(|c| c.size > 0).count();
            Some((6 + 2 * n, (points - cut) as usize))
        }
        FamilySpec::Case3 { .. } => None,
    }
}

/// `#(lΔ₃ ∩ M)`.
fn simplex_points(l: i64) -> i64 {
    (l + 1) * (l + 2) * (l + 3) / 6
}

/// `#(lΔ₂ ∩ M)`, the points left on the cutting plane.
fn triangle_points(l: i64) -> i64 {
    (l + 1) * (l + 2) / 2
}

fn recognize_case3(q: &LatticePolytope) -> Option<FamilySpec> {
    parallel_facet_pairs(q)
        .into_iter()
        .filter(|&(_, _, w)| w == 1)
        .find_map(|(i, _, _)| {
            let slices = slices_along(q, i).ok()?;
            let [f0, f1] = <[LatticePolytope; 2]>::try_from(slices).ok()?;
            let ok = is_nonsingular_polygon(&f0)
                && is_nonsingular_polygon(&f1)
                && same_normal_fan(&f0, &f1);
            ok.then_some(FamilySpec::Case3 { f0, f1 })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Cut, PrismCorner, SimplexCorner};
    use crate::lattice_core::{convex_hull, AffineUnimodularMap};

    fn p3(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new3(x, y, z)
    }

    fn p2(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new2(x, y)
    }

    fn simplex(k: i64) -> LatticePolytope {
        convex_hull(&[p3(0, 0, 0), p3(k, 0, 0), p3(0, k, 0), p3(0, 0, k)]).unwrap()
    }

    #[test]
    fn doubled_simplex() {
        let r = classify(&simplex(2));
        assert_eq!(r.family, Family::Case1);
        assert_eq!(r.parameters, Some(FamilySpec::Case1 { k: 2, cuts: vec![] }));
        assert!(r.adjoint_vanishes);
    }

    #[test]
    fn cube_is_cayley() {
        let cube: Vec<LatticePoint> = (0..8)
            .map(|b| p3(b & 1, (b >> 1) & 1, (b >> 2) & 1))
            .collect();
        let r = classify(&convex_hull(&cube).unwrap());
        assert_eq!(r.family, Family::Case3);
    }

    #[test]
    fn large_simplex_unknown() {
        let r = classify(&simplex(4));
        assert_eq!(r.family, Family::Unknown);
        assert!(!r.adjoint_vanishes);
    }

    #[test]
    fn singular_unknown() {
        let p = convex_hull(&[
            p3(0, 0, 0),
            p3(1, 0, 0),
            p3(0, 1, 0),
            p3(0, 0, 1),
            p3(1, 1, 1),
        ])
        .unwrap();
        assert_eq!(classify(&p).family, Family::Unknown);
    }

    #[test]
    fn cut_simplex_beats_prism() {
        // 2Δ₃ minus a corner is also a prism over Δ₂
        let spec = FamilySpec::Case1 {
            k: 2,
            cuts: vec![Cut {
                corner: SimplexCorner::E3,
                size: 1,
            }],
        };
        let q = build_family(&spec).unwrap();
        assert_eq!(classify(&q).family, Family::Case1);
    }

    #[test]
    fn prism_beats_cayley() {
        let q = build_family(&FamilySpec::Case2 {
            base_scale: 1,
            edges: [1, 1, 1],
            cuts: vec![],
        })
        .unwrap();
        assert_eq!(classify(&q).family, Family::Case2);
    }

    #[test]
    fn recognition_after_unimodular_map() {
        let spec = FamilySpec::Case2 {
            base_scale: 2,
            edges: [3, 1, 3],
            cuts: vec![Cut {
                corner: PrismCorner::RoofE1,
                size: 1,
            }],
        };
        let q = build_family(&spec).unwrap();
        let map =
            AffineUnimodularMap::new(&[vec![1, 2, 0], vec![0, 1, 0], vec![1, 1, 1]], p3(5, -3, 2))
                .unwrap();
        let moved = map.apply(&q).unwrap();
        let r = classify(&moved);
        assert_eq!(r.family, Family::Case2);
        let recovered = build_family(r.parameters.as_ref().unwrap()).unwrap();
        assert_eq!(canonical_form(&recovered), canonical_form(&q));
    }

    #[test]
    fn tall_prism_heights_recovered() {
        let q = build_family(&FamilySpec::Case2 {
            base_scale: 1,
            edges: [7, 2, 5],
            cuts: vec![],
        })
        .unwrap();
        let r = classify(&q);
        assert_eq!(r.family, Family::Case2);
        match r.parameters.unwrap() {
            FamilySpec::Case2 { edges, .. } => {
                let mut e = edges;
                e.sort();
                assert_eq!(e, [2, 5, 7]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_counts_match_built_members() {
        let specs = case1_specs()
            .into_iter()
            .chain(crate::families::case2_specs(3));
        for spec in specs {
            let q = build_family(&spec).unwrap();
            assert_eq!(
                shape_counts(&spec),
                Some((q.vertices().len(), q.lattice_points().len())),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn hexagon_cayley() {
        let hex =
            convex_hull(&[p2(1, 0), p2(2, 0), p2(2, 1), p2(1, 2), p2(0, 2), p2(0, 1)]).unwrap();
        let big = hex.dilate(2).unwrap();
        let q = build_family(&FamilySpec::Case3 { f0: hex, f1: big }).unwrap();
        let r = classify(&q);
        assert_eq!(r.family, Family::Case3);
        let Some(FamilySpec::Case3 { f0, f1 }) = r.parameters else {
            panic!()
        };
        let mut sizes = [f0.lattice_points().len(), f1.lattice_points().len()];
        sizes.sort();
        assert_eq!(sizes, [7, 19]);
    }
}
