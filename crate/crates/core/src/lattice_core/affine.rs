use serde::Serialize;

use super::point::{det, LatticePoint};
use super::polytope::{convex_hull, LatticePolytope};
use crate::error::{Error, Result};

/// `x ↦ A·x + t` with `det A = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AffineUnimodularMap {
    dim: usize,
    matrix: [[i64; 3]; 3],
    translation: LatticePoint,
}

fn matrix_det(dim: usize, m: &[[i64; 3]; 3]) -> i128 {
    let rows: Vec<LatticePoint> = (0..dim)
        .map(|r| LatticePoint::from_slice(&m[r][..dim]).expect("dim 2 or 3"))
        .collect();
    det(&rows)
}

impl AffineUnimodularMap {
    /// Builds the map from row-major `rows` (dim × dim) and a translation.
    pub fn new(rows: &[Vec<i64>], translation: LatticePoint) -> Result<Self> {
        let dim = translation.dim();
        if rows.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: rows.len(),
            });
        }
        let mut matrix = [[0i64; 3]; 3];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            matrix[r][..dim].copy_from_slice(row);
        }
        let d = matrix_det(dim, &matrix);
        if d.abs() != 1 {
            return Err(Error::NotUnimodular(
                d.clamp(i64::MIN as i128, i64::MAX as i128) as i64,
            ));
        }
        Ok(Self {
            dim,
            matrix,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut matrix = [[0i64; 3]; 3];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self {
            dim,
            matrix,
            translation: LatticePoint::origin(dim),
        }
    }

    pub fn translation_by(t: LatticePoint) -> Self {
        Self {
            translation: t,
            ..Self::identity(t.dim())
        }
    }

    /// The map sending `apex` to the origin and `generators[i]` to `e_i`.
    pub fn normalizing(apex: LatticePoint, generators: &[LatticePoint]) -> Result<Self> {
        let dim = apex.dim();
        if generators.len() != dim || det(generators).abs() != 1 {
            return Err(Error::NotSmoothVertex(apex));
        }
        // columns are the generators
        let mut cols = [[0i64; 3]; 3];
        for (c, g) in generators.iter().enumerate() {
            for (r, &x) in g.coords().iter().enumerate() {
                cols[r][c] = x;
            }
        }
        let linear = Self {
            dim,
            matrix: cols,
            translation: LatticePoint::origin(dim),
        }
        .inverse()?;
        let t = linear.apply_linear(&apex)?;
        Ok(Self {
            translation: -t,
            ..linear
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|r| self.matrix[r][..self.dim].to_vec())
            .collect()
    }

    pub fn translation(&self) -> LatticePoint {
        self.translation
    }

    pub fn determinant(&self) -> i64 {
        matrix_det(self.dim, &self.matrix) as i64
    }

    pub fn apply_linear(&self, p: &LatticePoint) -> Result<LatticePoint> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        let mut out = [0i64; 3];
        for (r, o) in out.iter_mut().enumerate().take(self.dim) {
            let s: i128 = (0..self.dim)
                .map(|c| self.matrix[r][c] as i128 * p.coords()[c] as i128)
                .sum();
            *o = i64::try_from(s).map_err(|_| Error::Overflow)?;
        }
        LatticePoint::from_slice(&out[..self.dim])
    }

    pub fn apply_point(&self, p: &LatticePoint) -> Result<LatticePoint> {
        self.apply_linear(p)?.checked_add(self.translation)
    }

    /// The image polytope, with facets recomputed.
    pub fn apply(&self, polytope: &LatticePolytope) -> Result<LatticePolytope> {
        if polytope.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: polytope.dim(),
            });
        }
        let image = polytope
            .vertices()
            .iter()
            .map(|v| self.apply_point(v))
            .collect::<Result<Vec<_>>>()?;
        convex_hull(&image)
    }

    pub fn inverse(&self) -> Result<Self> {
        let m = &self.matrix;
        let d = matrix_det(self.dim, m) as i64;
        let mut inv = [[0i64; 3]; 3];
        if self.dim == 2 {
            inv[0][0] = m[1][1] * d;
            inv[0][1] = -m[0][1] * d;
            inv[1][0] = -m[1][0] * d;
            inv[1][1] = m[0][0] * d;
        } else {
            for (r, row) in inv.iter_mut().enumerate() {
                for (c, entry) in row.iter_mut().enumerate() {
                    // adjugate entry (r, c) is the (c, r) cofactor
                    let (r1, r2) = ((c + 1) % 3, (c + 2) % 3);
                    let (c1, c2) = ((r + 1) % 3, (r + 2) % 3);
                    let cof = m[r1][c1] as i128 * m[r2][c2] as i128
                        - m[r1][c2] as i128 * m[r2][c1] as i128;
                    *entry = i64::try_from(cof * d as i128).map_err(|_| Error::Overflow)?;
                }
            }
        }
        let linear = Self {
            dim: self.dim,
            matrix: inv,
            translation: LatticePoint::origin(self.dim),
        };
        let t = linear.apply_linear(&self.translation)?;
        Ok(Self {
            translation: -t,
            ..linear
        })
    }

    /// `self ∘ other`.
    #[allow(clippy::needless_range_loop)]
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut matrix = [[0i64; 3]; 3];
        for r in 0..self.dim {
            for c in 0..self.dim {
                let s: i128 = (0..self.dim)
                    .map(|k| self.matrix[r][k] as i128 * other.matrix[k][c] as i128)
                    .sum();
                matrix[r][c] = i64::try_from(s).map_err(|_| Error::Overflow)?;
            }
        }
        let translation = self.apply_point(&other.translation)?;
        Ok(Self {
            dim: self.dim,
            matrix,
            translation,
        })
    }
}

/// Applies `map` to `polytope`.
pub fn apply_map(map: &AffineUnimodularMap, polytope: &LatticePolytope) -> Result<LatticePolytope> {
    map.apply(polytope)
}

/// Moves the smooth vertex `v` to the origin with its edge generators on the
/// standard basis, in the order given by [`LatticePolytope::vertex_cone`].
pub fn normalize_at_vertex(
    polytope: &LatticePolytope,
    v: &LatticePoint,
) -> Result<(AffineUnimodularMap, LatticePolytope)> {
    let cone = polytope.vertex_cone(v)?;
    if !cone.is_unimodular() {
        return Err(Error::NotSmoothVertex(*v));
    }
    let map = AffineUnimodularMap::normalizing(*v, &cone.generators)?;
    let image = map.apply(polytope)?;
    Ok((map, image))
}

pub(crate) fn permutations<T: Copy>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A complete invariant of smooth polytopes under unimodular affine maps:
/// the lexicographically least sorted vertex list over every normalization
/// at every vertex and every ordering of its edge generators.
///
/// `None` if some vertex is not smooth.
pub fn canonical_form(polytope: &LatticePolytope) -> Option<Vec<LatticePoint>> {
    let mut best: Option<Vec<LatticePoint>> = None;
    for v in polytope.vertices() {
        let cone = polytope.vertex_cone(v).ok()?;
        if !cone.is_unimodular() {
            return None;
        }
        for order in permutations(&cone.generators) {
            let map = AffineUnimodularMap::normalizing(*v, &order).ok()?;
            let mut image: Vec<LatticePoint> = polytope
                .vertices()
                .iter()
                .map(|p| map.apply_point(p))
                .collect::<Result<_>>()
                .ok()?;
            image.sort();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
    }
    best
}
