use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spec::{build_family, Cut, FamilySpec, PrismCorner, SimplexCorner};
use crate::lattice_core::{convex_hull, det2, LatticePoint, LatticePolytope};
use crate::polygon_tools::{is_nonsingular_polygon, normal_fan_signature};

/// Every valid Case1 spec: `k ≤ 3` with all admissible cut vectors.
pub fn case1_specs() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for k in 1..=3 {
        let sizes = 0..k;
        for l0 in sizes.clone() {
            for l1 in sizes.clone() {
                for l2 in sizes.clone() {
                    for l3 in sizes.clone() {
                        let l = [l0, l1, l2, l3];
                        let ok = (0..4).all(|i| (i + 1..4).all(|j| l[i] + l[j] < k));
                        if !ok {
                            continue;
                        }
                        let cuts = SimplexCorner::ALL
                            .iter()
                            .zip(l)
                            .filter(|&(_, size)| size > 0)
                            .map(|(&corner, size)| Cut { corner, size })
                            .collect();
                        specs.push(FamilySpec::Case1 { k, cuts });
                    }
                }
            }
        }
    }
    specs
}

/// Every valid Case2 spec with vertical edges of length `1..=max_edge`.
pub fn case2_specs(max_edge: i64) -> Vec<FamilySpec> {
    let heights: Vec<i64> = (1..=max_edge).collect();
    case2_candidates(&heights)
        .into_iter()
        .filter(|s| build_family(s).is_ok())
        .collect()
}

/// Parity-valid Case2 specs over `heights`; cut placements are not checked.
pub(crate) fn case2_candidates(heights: &[i64]) -> Vec<FamilySpec> {
    let base: [Option<PrismCorner>; 4] = [
        None,
        Some(PrismCorner::BaseOrigin),
        Some(PrismCorner::BaseE1),
        Some(PrismCorner::BaseE2),
    ];
    let roof: [Option<PrismCorner>; 4] = [
        None,
        Some(PrismCorner::RoofOrigin),
        Some(PrismCorner::RoofE1),
        Some(PrismCorner::RoofE2),
    ];
    let mut specs = Vec::new();
    for base_scale in 1..=2 {
        for &a in heights {
            for &b in heights {
                for &c in heights {
                    if (a - c) % base_scale != 0 || (b - c) % base_scale != 0 {
                        continue;
                    }
                    for size in 0..base_scale {
                        for bc in base {
                            for rc in roof {
                                let corners: Vec<PrismCorner> =
                                    [bc, rc].into_iter().flatten().collect();
                                if (size == 0) != corners.is_empty() {
                                    continue;
                                }
                                let cuts = corners
                                    .into_iter()
                                    .map(|corner| Cut { corner, size })
                                    .collect();
                                specs.push(FamilySpec::Case2 {
                                    base_scale,
                                    edges: [a, b, c],
                                    cuts,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    specs
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All nonsingular lattice polygons with at most `max_vertices` vertices
/// inside `[0, max_coord]²`, one per translation class (touching both axes).
pub fn nonsingular_polygons(max_coord: i64, max_vertices: usize) -> Vec<LatticePolytope> {
    let grid: Vec<LatticePoint> = (0..=max_coord)
        .flat_map(|x| (0..=max_coord).map(move |y| LatticePoint::new2(x, y)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for size in 3..=max_vertices {
        for idx in combinations(grid.len(), size) {
            let pts: Vec<LatticePoint> = idx.iter().map(|&i| grid[i]).collect();
            if pts.iter().all(|p| p.x() > 0) || pts.iter().all(|p| p.y() > 0) {
                continue;
            }
            let Ok(f) = convex_hull(&pts) else { continue };
            if f.vertices().len() != size || !is_nonsingular_polygon(&f) {
                continue;
            }
            if seen.insert(f.vertices().to_vec()) {
                out.push(f);
            }
        }
    }
    out
}

/// Unordered pairs (including equal ones) of polygons with the same normal
/// fan, in input order.
pub fn same_fan_pairs(polygons: &[LatticePolytope]) -> Vec<(LatticePolytope, LatticePolytope)> {
    let sig: Vec<Vec<LatticePoint>> = polygons.iter().map(normal_fan_signature).collect();
    let mut pairs = Vec::new();
    for i in 0..polygons.len() {
        for j in i..polygons.len() {
            if sig[i] == sig[j] {
                pairs.push((polygons[i].clone(), polygons[j].clone()));
            }
        }
    }
    pairs
}

/// Case3 specs over all same-fan pairs from [`nonsingular_polygons`].
pub fn case3_specs(max_coord: i64, max_vertices: usize) -> Vec<FamilySpec> {
    same_fan_pairs(&nonsingular_polygons(max_coord, max_vertices))
        .into_iter()
        .map(|(f0, f1)| FamilySpec::Case3 { f0, f1 })
        .collect()
}

fn starting_fan(rng: &mut ChaCha8Rng) -> Vec<LatticePoint> {
    let p2 = LatticePoint::new2;
    if rng.gen_bool(0.3) {
        vec![p2(1, 0), p2(-1, 1), p2(0, -1)]
    } else {
        let a = rng.gen_range(0..=3);
        vec![p2(1, 0), p2(a, 1), p2(-1, 0), p2(-a, -1)]
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    let mut m = [[1, 0], [0, 1]];
    for _ in 0..rng.gen_range(0..=4) {
        let t = rng.gen_range(-1..=1);
        let e = match rng.gen_range(0..3) {
            0 => [[1, t], [0, 1]],
            1 => [[1, 0], [t, 1]],
            _ => [[0, -1], [1, 0]],
        };
        m = [
            [
                e[0][0] * m[0][0] + e[0][1] * m[1][0],
                e[0][0] * m[0][1] + e[0][1] * m[1][1],
            ],
            [
                e[1][0] * m[0][0] + e[1][1] * m[1][0],
                e[1][0] * m[0][1] + e[1][1] * m[1][1],
            ],
        ];
    }
    m
}

/// One random nonsingular polygon: random blow-ups of a minimal fan, random
/// edge lengths closed up on two adjacent edges, then a random unimodular
/// change of coordinates. `None` if the attempt falls outside the bounds.
fn random_polygon(
    rng: &mut ChaCha8Rng,
    max_edges: usize,
    max_coord: i64,
) -> Option<LatticePolytope> {
    let mut dirs = starting_fan(rng);
    let target = rng.gen_range(dirs.len()..=max_edges.max(dirs.len()));
    while dirs.len() < target {
        let i = rng.gen_range(0..dirs.len());
        let j = (i + 1) % dirs.len();
        dirs.insert(i + 1, dirs[i] + dirs[j]);
    }
    let n = dirs.len();
    let p = rng.gen_range(0..n);
    let q = (p + 1) % n;
    let mut lengths: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let rest = (0..n)
        .filter(|&i| i != p && i != q)
        .fold(LatticePoint::new2(0, 0), |s, i| {
            s + dirs[i].checked_scale(lengths[i]).ok().unwrap()
        });
    // with det(d_p, d_q) = 1 the closing lengths are integral
    let neg = -rest;
    lengths[p] = det2(&neg, &dirs[q]) as i64;
    lengths[q] = det2(&dirs[p], &neg) as i64;
    if lengths[p] < 1 || lengths[q] < 1 {
        return None;
    }
    let m = random_unimodular(rng);
    let mut cur = LatticePoint::new2(0, 0);
    let mut vertices = Vec::with_capacity(n);
    for (d, l) in dirs.iter().zip(&lengths) {
        vertices.push(LatticePoint::new2(
            m[0][0] * cur.x() + m[0][1] * cur.y(),
            m[1][0] * cur.x() + m[1][1] * cur.y(),
        ));
        cur = cur + d.checked_scale(*l).ok()?;
    }
    let min_x = vertices.iter().map(|v| v.x()).min()?;
    let min_y = vertices.iter().map(|v| v.y()).min()?;
    let shift = LatticePoint::new2(-min_x, -min_y);
    let vertices: Vec<LatticePoint> = vertices.iter().map(|v| *v + shift).collect();
    if vertices.iter().any(|v| v.max_abs() > max_coord) {
        return None;
    }
    let f = convex_hull(&vertices).ok()?;
    (f.vertices().len() == n && is_nonsingular_polygon(&f)).then_some(f)
}

/// `count` distinct nonsingular polygons with a nonempty interior, at most
/// `max_edges` edges and coordinates in `[0, max_coord]`. Deterministic in
/// `seed`; may return fewer if the bounds admit too few polygons.
pub fn random_nonsingular_polygons(
    seed: u64,
    count: usize,
    max_edges: usize,
    max_coord: i64,
) -> Vec<LatticePolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let Some(f) = random_polygon(&mut rng, max_edges, max_coord) else {
            continue;
        };
        if f.interior_lattice_points().is_empty() {
            continue;
        }
        if seen.insert(f.vertices().to_vec()) {
            out.push(f);
        }
    }
    out
}
