use crate::error::{Error, Result};
use crate::lattice_core::{convex_hull, AffineUnimodularMap, LatticePoint, LatticePolytope};

/// A unimodular linear map whose third output coordinate is `n·x`.
/// `n` must be a primitive 3-vector.
pub(crate) fn height_map(n: &LatticePoint) -> Result<AffineUnimodularMap> {
    // column operations reduce n^T to e3^T; v records them
    let mut r = [n.x(), n.y(), n.z()];
    let mut v = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    loop {
        let nonzero: Vec<usize> = (0..3).filter(|&i| r[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let j = *nonzero
            .iter()
            .min_by_key(|&&i| r[i].abs())
            .expect("nonempty");
        for &i in &nonzero {
            if i != j {
                let q = r[i] / r[j];
                r[i] -= q * r[j];
                for row in &mut v {
                    row[i] -= q * row[j];
                }
            }
        }
    }
    let j = (0..3)
        .find(|&i| r[i] != 0)
        .ok_or(Error::InvalidArgument("zero normal".into()))?;
    if r[j].abs() != 1 {
        return Err(Error::InvalidArgument(format!(
            "normal {n} is not primitive"
        )));
    }
    for row in &mut v {
        row.swap(j, 2);
        row[2] *= r[j];
    }
    let rows: Vec<Vec<i64>> = v.iter().map(|row| row.to_vec()).collect();
    AffineUnimodularMap::new(&rows, LatticePoint::origin(3))?.inverse()
}

/// Pairs of opposite facets `(i, j, width)`, narrowest first.
pub(crate) fn parallel_facet_pairs(q: &LatticePolytope) -> Vec<(usize, usize, i64)> {
    let facets = q.facets();
    let mut pairs = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            if facets[j].normal == -facets[i].normal {
                let width = -facets[j].offset - facets[i].offset;
                pairs.push((i, j, width as i64));
            }
        }
    }
    pairs.sort_by_key(|&(i, j, w)| (w, i, j));
    pairs
}

/// The slices `F_0, …, F_l` between the narrowest pair of parallel facets,
/// in height order, as polygons in a common lattice plane basis.
pub fn cayley_slices(q: &LatticePolytope) -> Result<Vec<LatticePolytope>> {
    if q.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: q.dim(),
        });
    }
    let &(i, _, _) = parallel_facet_pairs(q)
        .first()
        .ok_or(Error::NoParallelFacetPair)?;
    slices_along(q, i)
}

/// Slices perpendicular to the normal of facet `i`, starting on that facet.
pub(crate) fn slices_along(q: &LatticePolytope, i: usize) -> Result<Vec<LatticePolytope>> {
    let facet = &q.facets()[i];
    let map = height_map(&facet.normal)?;
    let image = map.apply(q)?;
    let vs = image.vertices();
    let h0 = vs.iter().map(|v| v.z()).min().expect("nonempty");
    let h1 = vs.iter().map(|v| v.z()).max().expect("nonempty");
    let mut slices = Vec::new();
    for h in h0..=h1 {
        let mut pts: Vec<LatticePoint> = vs
            .iter()
            .filter(|v| v.z() == h)
            .map(|v| v.project2())
            .collect();
        for &(a, b) in image.edges() {
            let (a, b) = (vs[a], vs[b]);
            let (lo, hi) = if a.z() < b.z() { (a, b) } else { (b, a) };
            if lo.z() < h && h < hi.z() {
                let num = (hi - lo).checked_scale(h - lo.z())?;
                let step = num
                    .div_exact(hi.z() - lo.z())
                    .ok_or(Error::NonLatticeSlice(h - h0))?;
                pts.push((lo + step).project2());
            }
        }
        let slice = convex_hull(&pts).map_err(|e| match e {
            Error::DegenerateInput { .. } => Error::NoParallelFacetPair,
            other => other,
        })?;
        slices.push(slice);
    }
    Ok(slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_family, FamilySpec};

    fn p2(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new2(x, y)
    }

    fn p3(x: i64, y: i64, z: i64) -> LatticePoint {
        LatticePoint::new3(x, y, z)
    }

    #[test]
    fn height_map_is_unimodular() {
        for n in [
            p3(0, 0, 1),
            p3(1, 0, 0),
            p3(2, 3, 5),
            p3(-6, 10, 15),
            p3(0, -1, 0),
        ] {
            let m = height_map(&n).unwrap();
            for x in [p3(1, 2, 3), p3(-4, 0, 7)] {
                assert_eq!(m.apply_linear(&x).unwrap().z() as i128, n.dot(&x));
            }
        }
        assert!(height_map(&p3(2, 4, 0)).is_err());
    }

    #[test]
    fn cube_slices() {
        let sq = convex_hull(&[p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)]).unwrap();
        let cube = build_family(&FamilySpec::Case3 {
            f0: sq.clone(),
            f1: sq,
        })
        .unwrap();
        let slices = cayley_slices(&cube).unwrap();
        assert_eq!(slices.len(), 2);
        for s in &slices {
            assert_eq!(s.vertices().len(), 4);
            assert_eq!(s.lattice_points().len(), 4);
        }
    }

    #[test]
    fn recovers_input_polygons() {
        let f0 = convex_hull(&[p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1)]).unwrap();
        let f1 = convex_hull(&[p2(3, 3), p2(5, 3), p2(3, 5), p2(5, 5)]).unwrap();
        let q = build_family(&FamilySpec::Case3 { f0, f1 }).unwrap();
        let slices = cayley_slices(&q).unwrap();
        // the slanted sides are not parallel, so the pair is z = 0, z = 1
        assert_eq!(slices.len(), 2);
        let mut sorted: Vec<usize> = slices.iter().map(|s| s.lattice_points().len()).collect();
        sorted.sort();
        assert_eq!(sorted, vec![4, 9]);
    }

    #[test]
    fn simplex_has_no_pair() {
        let d = convex_hull(&[p3(0, 0, 0), p3(1, 0, 0), p3(0, 1, 0), p3(0, 0, 1)]).unwrap();
        assert_eq!(cayley_slices(&d), Err(Error::NoParallelFacetPair));
    }

    #[test]
    fn thick_slab() {
        // 2 × unit cube: three slices, each a 2 × 2 square
        let cube: Vec<LatticePoint> = (0..8)
            .map(|b| p3(2 * (b & 1), (b >> 1) & 1, 2 * ((b >> 2) & 1)))
            .collect();
        let q = convex_hull(&cube).unwrap();
        let slices = cayley_slices(&q).unwrap();
        // narrowest direction is y with width 1
        assert_eq!(slices.len(), 2);
        let q2 = q.dilate(2).unwrap();
        assert_eq!(cayley_slices(&q2).unwrap().len(), 3);
    }
}
