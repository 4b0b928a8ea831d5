//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadrigen::cli::{case1_instances, case2_instances, case3_instances, Instance};
use quadrigen::families::random_nonsingular_polygons;
use quadrigen::lattice_core::{
    canonical_form, convex_hull, AffineUnimodularMap, LatticePoint, LatticePolytope,
};
use quadrigen::polygon_tools::{find_basic_diamond, koelman_classify};
use quadrigen::toric_ideal::{
    chart_presentation, check_2d, check_2d_all, fiber_graph_oracle, fujita_counts,
    quadratic_presentation,
};

const SEED: u64 = 2024;
const TRIALS: usize = 1000;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn p2(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new2(x, y)
}

fn p3(x: i64, y: i64, z: i64) -> LatticePoint {
    LatticePoint::new3(x, y, z)
}

fn simplex(k: i64) -> LatticePolytope {
    convex_hull(&[p3(0, 0, 0), p3(k, 0, 0), p3(0, k, 0), p3(0, 0, k)]).unwrap()
}

// independent oracles

/// Brute-force count of `{x, y, z >= 0, x + y + z <= k}` and of its strict
/// interior.
fn simplex_counts_brute(k: i64) -> (usize, usize) {
    let (mut all, mut interior) = (0, 0);
    for x in 0..=k {
        for y in 0..=k {
            for z in 0..=k {
                if x + y + z <= k {
                    all += 1;
                    if x > 0 && y > 0 && z > 0 && x + y + z < k {
                        interior += 1;
                    }
                }
            }
        }
    }
    (all, interior)
}

/// Unit-step neighbours of `v` along its edges, found from the vertex list alone.
fn basis_points_brute(p: &LatticePolytope, v: &LatticePoint) -> Vec<LatticePoint> {
    p.edges()
        .iter()
        .filter_map(|&(a, b)| {
            let (a, b) = (p.vertices()[a], p.vertices()[b]);
            let other = if a == *v {
                b
            } else if b == *v {
                a
            } else {
                return None;
            };
            Some(*v + (other - *v).primitive().unwrap())
        })
        .collect()
}

/// Points of `P ∩ M` other than the vertex and its basis points that have no
/// decomposition `m + v = a + b` with `a, b ≠ v`.
fn unwitnessed_brute(
    p: &LatticePolytope,
    points: &[LatticePoint],
    v: &LatticePoint,
) -> Vec<LatticePoint> {
    let set: HashSet<LatticePoint> = points.iter().copied().collect();
    let basis = basis_points_brute(p, v);
    points
        .iter()
        .filter(|m| *m != v && !basis.contains(m))
        .filter(|m| {
            let target = **m + *v;
            !points
                .iter()
                .any(|a| a != v && target - *a != *v && set.contains(&(target - *a)))
        })
        .copied()
        .collect()
}

/// Point-in-convex-polygon by orientation against every edge of the ccw
/// vertex list.
fn in_polygon(vs: &[LatticePoint], m: &LatticePoint) -> bool {
    (0..vs.len()).all(|i| {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        let cross = (b.x() - a.x()) * (m.y() - a.y()) - (b.y() - a.y()) * (m.x() - a.x());
        cross >= 0
    })
}

/// Lattice points of the parallelogram spanned at `c` by `u`, `w` (det ±1),
/// via its own barycentric test over the bounding box.
fn parallelogram_points(c: LatticePoint, u: LatticePoint, w: LatticePoint) -> usize {
    let det = u.x() * w.y() - u.y() * w.x();
    let corners = [c, c + u, c + w, c + u + w];
    let (x0, x1) = (
        corners.iter().map(|p| p.x()).min().unwrap(),
        corners.iter().map(|p| p.x()).max().unwrap(),
    );
    let (y0, y1) = (
        corners.iter().map(|p| p.y()).min().unwrap(),
        corners.iter().map(|p| p.y()).max().unwrap(),
    );
    let mut n = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            let (dx, dy) = (x - c.x(), y - c.y());
            // coordinates in the (u, w) basis, scaled by det
            let s = (dx * w.y() - dy * w.x()) * det.signum();
            let t = (u.x() * dy - u.y() * dx) * det.signum();
            if (0..=det.abs()).contains(&s) && (0..=det.abs()).contains(&t) {
                n += 1;
            }
        }
    }
    n
}

fn shoelace2(vs: &[LatticePoint]) -> i64 {
    (0..vs.len())
        .map(|i| {
            let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
            a.x() * b.y() - a.y() * b.x()
        })
        .sum::<i64>()
        .abs()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_unimodular3(rng: &mut ChaCha8Rng) -> AffineUnimodularMap {
    let mut m = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..rng.gen_range(1..=4) {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i == j {
            m.swap(0, 1);
            continue;
        }
        let t = rng.gen_range(-1..=1);
        let src = m[j];
        for (a, b) in m[i].iter_mut().zip(src) {
            *a += t * b;
        }
    }
    let rows: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
    let shift = p3(
        rng.gen_range(-3..=3),
        rng.gen_range(-3..=3),
        rng.gen_range(-3..=3),
    );
    AffineUnimodularMap::new(&rows, shift).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, dim: usize, n: usize, box_size: i64) -> Vec<LatticePoint> {
    (0..n)
        .map(|_| {
            let c: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=box_size)).collect();
            LatticePoint::from_slice(&c).unwrap()
        })
        .collect()
}

fn random_polytope(rng: &mut ChaCha8Rng, dim: usize, box_size: i64) -> LatticePolytope {
    loop {
        let n = rng.gen_range(dim + 1..=dim + 6);
        if let Ok(p) = convex_hull(&random_points(rng, dim, n, box_size)) {
            return p;
        }
    }
}

fn family_pool() -> Vec<Instance> {
    let mut pool = case1_instances().unwrap();
    pool.extend(case2_instances(3).unwrap());
    pool.extend(case3_instances(3, 4, false, 0).unwrap());
    pool
}

// criteria

fn counting() -> Outcome {
    for k in 1..=6 {
        let expected = ((k + 1) * (k + 2) * (k + 3) / 6) as usize;
        let (brute, brute_interior) = simplex_counts_brute(k);
        let s = simplex(k);
        let got = s.lattice_points().len();
        if got != expected || brute != expected {
            return fail(format!(
                "k={k}: |kΔ₃ ∩ M| = {got}, formula {expected}, brute force {brute}"
            ));
        }
        let interior = s.interior_lattice_points().len();
        if interior != brute_interior {
            return fail(format!(
                "k={k}: {interior} interior points, brute force {brute_interior}"
            ));
        }
        let want = if k <= 3 {
            Some(0)
        } else if k == 4 {
            Some(1)
        } else {
            None
        };
        if want.is_some_and(|w| w != interior) {
            return fail(format!(
                "k={k}: {interior} interior points, expected {want:?}"
            ));
        }
    }
    let three = simplex(3).lattice_points().len();
    if three != 20 {
        return fail(format!("|3Δ₃ ∩ M| = {three}"));
    }
    pass("k=1..6 match the formula and brute force; interior 0 for k<=3, 1 for k=4")
}

fn sweep_2d(instances: &[Instance]) -> Result<usize, String> {
    for inst in instances {
        let p = &inst.polytope;
        let points = p.lattice_points();
        for v in p.vertices() {
            let cert = check_2d(p, v).map_err(|e| format!("{}: {e}", inst.label))?;
            if !cert.verify(p) {
                return Err(format!(
                    "{}: certificate at {v} does not verify",
                    inst.label
                ));
            }
            let brute = unwitnessed_brute(p, &points, v);
            if !brute.is_empty() {
                return Err(format!(
                    "{}: brute force finds unwitnessed {brute:?} at {v}",
                    inst.label
                ));
            }
            let mut covered: Vec<LatticePoint> = cert.witnesses.iter().map(|w| w.point).collect();
            covered.sort();
            let basis = basis_points_brute(p, v);
            let mut expected: Vec<LatticePoint> = points
                .iter()
                .filter(|m| *m != v && !basis.contains(m))
                .copied()
                .collect();
            expected.sort();
            if covered != expected {
                return Err(format!("{}: certificate at {v} misses points", inst.label));
            }
        }
    }
    Ok(instances.len())
}

fn case12_sweep() -> Outcome {
    let mut instances = case1_instances().unwrap();
    instances.extend(case2_instances(3).unwrap());
    match sweep_2d(&instances) {
        Ok(n) if n >= 50 => pass(format!("{n} Case1/Case2 instances, 2-D at every vertex")),
        Ok(n) => fail(format!("only {n} instances")),
        Err(e) => fail(e),
    }
}

fn case3_sweep() -> Outcome {
    let instances = case3_instances(4, 5, true, 40).unwrap();
    let variants = instances
        .iter()
        .filter(|i| i.label.contains("f0=") && !i.label.starts_with("case3"))
        .count();
    match sweep_2d(&instances) {
        Ok(n) => pass(format!(
            "{n} Cayley instances ({variants} Minkowski variants), 2-D at every vertex"
        )),
        Err(e) => fail(e),
    }
}

fn oracle_cross_check() -> Outcome {
    let mut instances = case1_instances().unwrap();
    instances.extend(case2_instances(3).unwrap());
    instances.extend(case3_instances(4, 5, true, 40).unwrap());
    let small: Vec<&Instance> = instances
        .iter()
        .filter(|i| i.polytope.lattice_points().len() <= 25)
        .collect();
    for inst in &small {
        match fiber_graph_oracle(&inst.polytope, 3) {
            Ok(r) if r.all_connected => {}
            Ok(r) => return fail(format!("{}: {:?}", inst.label, r.first_failure)),
            Err(e) => return fail(format!("{}: {e}", inst.label)),
        }
    }
    if small.len() < 20 {
        return fail(format!("only {} instances with <= 25 points", small.len()));
    }
    pass(format!(
        "{} instances with <= 25 points, every fiber connected through degree 3",
        small.len()
    ))
}

fn koelman_exception() -> Outcome {
    let exceptional = convex_hull(&[p2(0, 0), p2(2, 1), p2(1, 2)]).unwrap();
    let verdict = koelman_classify(&exceptional).unwrap();
    let report = fiber_graph_oracle(&exceptional, 3).unwrap();
    let Some(failure) = report.first_failure.clone() else {
        return fail("no disconnected fiber for Conv{(0,0),(2,1),(1,2)}");
    };
    if !verdict.needs_cubics || failure.degree != 3 {
        return fail(format!(
            "needs_cubics={} failure degree {}",
            verdict.needs_cubics, failure.degree
        ));
    }
    // the exemplar must be a genuine fiber: equal sums, not joined by one move
    let sum = |ms: &[LatticePoint]| ms.iter().fold(p2(0, 0), |s, m| s + *m);
    if sum(&failure.first) != failure.sum || sum(&failure.second) != failure.sum {
        return fail("exemplar multisets do not lie in the reported fiber");
    }
    let triple = convex_hull(&[p2(0, 0), p2(3, 0), p2(0, 3)]).unwrap();
    let v3 = koelman_classify(&triple).unwrap();
    let r3 = fiber_graph_oracle(&triple, 3).unwrap();
    if v3.needs_cubics || !r3.all_connected {
        return fail(format!(
            "3Δ₂: needs_cubics={} all_connected={}",
            v3.needs_cubics, r3.all_connected
        ));
    }
    let show = |ms: &[LatticePoint]| {
        ms.iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join("+")
    };
    pass(format!(
        "exemplar at {}: {} vs {}; 3Δ₂ connected",
        failure.sum,
        show(&failure.first),
        show(&failure.second)
    ))
}

fn diamonds() -> Outcome {
    let polygons = random_nonsingular_polygons(SEED, 120, 8, 8);
    if polygons.len() < 100 {
        return fail(format!("only {} random polygons", polygons.len()));
    }
    let mut failures = Vec::new();
    for f in &polygons {
        let vs = f.vertices();
        for v in vs {
            let ok = match find_basic_diamond(f, v) {
                Ok(d) => {
                    let (u, w) = d.edge_vectors();
                    let base = d.opposite;
                    parallelogram_points(base, u, w) == 4
                        && d.corners.iter().all(|c| in_polygon(vs, c))
                        && d.shifted_corners().iter().all(|c| in_polygon(vs, c))
                }
                Err(_) => false,
            };
            if !ok {
                failures.push((vs.to_vec(), *v));
                break;
            }
        }
    }
    if failures.is_empty() {
        return pass(format!(
            "{} polygons, diamond verified at every vertex",
            polygons.len()
        ));
    }
    let triangles = failures.iter().filter(|(vs, _)| vs.len() == 3).count();
    let total_triangles = polygons.iter().filter(|f| f.vertices().len() == 3).count();
    let (vs, v) = &failures[0];
    fail(format!(
        "{}/{} polygons fail ({triangles} of them triangles, {total_triangles} triangles sampled); first: {vs:?} at {v}",
        failures.len(),
        polygons.len()
    ))
}

fn fujita() -> Outcome {
    let mut instances = case1_instances().unwrap();
    instances.extend(case2_instances(3).unwrap());
    for inst in &instances {
        let q = &inst.polytope;
        let c = match fujita_counts(q) {
            Ok(c) => c,
            Err(e) => return fail(format!("{}: {e}", inst.label)),
        };
        let chi = q.lattice_points().len() as i64;
        let doubled = q.dilate(2).unwrap();
        let genus = doubled
            .lattice_points()
            .iter()
            .filter(|m| doubled.contains_strictly(m))
            .count() as i64;
        if c.chi != chi || c.genus != genus || c.degree != genus - 1 + chi {
            return fail(format!(
                "{}: counts {c:?} vs chi={chi} genus={genus}",
                inst.label
            ));
        }
        if c.chi < c.genus + 3 || !c.quadric_by_fujita {
            return fail(format!("{}: chi={} genus={}", inst.label, c.chi, c.genus));
        }
    }
    pass(format!(
        "{} instances with chi >= genus + 3",
        instances.len()
    ))
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool = family_pool();

    // unimodular invariance
    for t in 0..TRIALS {
        let p = if t % 2 == 0 {
            random_polytope(&mut rng, 3, 4)
        } else {
            pool[rng.gen_range(0..pool.len())].polytope.clone()
        };
        let map = random_unimodular3(&mut rng);
        let q = map.apply(&p).unwrap();
        let same = p.lattice_points().len() == q.lattice_points().len()
            && p.interior_lattice_points().len() == q.interior_lattice_points().len()
            && p.vertices().len() == q.vertices().len()
            && p.is_smooth().smooth == q.is_smooth().smooth
            && canonical_form(&p) == canonical_form(&q);
        if !same {
            return fail(format!(
                "unimodular invariance, trial {t}: {:?}",
                p.vertices()
            ));
        }
    }

    // Pick: 2A = 2I + B - 2
    for t in 0..TRIALS {
        let f = random_polytope(&mut rng, 2, 9);
        let vs = f.vertices();
        let boundary: i64 = (0..vs.len())
            .map(|i| {
                let d = vs[(i + 1) % vs.len()] - vs[i];
                gcd(d.x(), d.y())
            })
            .sum();
        let interior = f.interior_lattice_points().len() as i64;
        let total = f.lattice_points().len() as i64;
        if shoelace2(vs) != 2 * interior + boundary - 2 || total != interior + boundary {
            return fail(format!("Pick, trial {t}: {vs:?}"));
        }
    }

    // hull idempotence, with random interior points added
    for t in 0..TRIALS {
        let dim = 2 + t % 2;
        let p = random_polytope(&mut rng, dim, 5);
        let mut pts = p.vertices().to_vec();
        pts.extend(p.lattice_points().into_iter().filter(|_| rng.gen_bool(0.3)));
        let again = convex_hull(&pts).unwrap();
        if again != p || convex_hull(p.vertices()).unwrap() != p {
            return fail(format!("hull idempotence, trial {t}: {:?}", p.vertices()));
        }
    }

    // certificate soundness: every certificate re-verifies; every failure is
    // confirmed by brute force
    for t in 0..TRIALS {
        let p = if t % 2 == 0 {
            random_polytope(&mut rng, 3, 3)
        } else {
            let base = &pool[rng.gen_range(0..pool.len())].polytope;
            random_unimodular3(&mut rng).apply(base).unwrap()
        };
        let points = p.lattice_points();
        for v in p.vertices() {
            if !p.vertex_cone(v).unwrap().is_unimodular() {
                continue;
            }
            let brute = unwitnessed_brute(&p, &points, v);
            match check_2d(&p, v) {
                Ok(cert) if cert.verify(&p) && brute.is_empty() => {}
                Err(quadrigen::Error::PropertyFails { unwitnessed, .. })
                    if unwitnessed == brute => {}
                other => {
                    return fail(format!(
                        "certificate soundness, trial {t} at {v}: {other:?}"
                    ))
                }
            }
        }
    }

    // exponent identities of charts and quadrics
    for t in 0..TRIALS {
        let base = &pool[rng.gen_range(0..pool.len())].polytope;
        let p = random_unimodular3(&mut rng).apply(base).unwrap();
        let v = p.vertices()[rng.gen_range(0..p.vertices().len())];
        let chart = chart_presentation(&p, &v).unwrap();
        for e in &chart.exponents {
            let mut m = v;
            for (b, &k) in chart.basis_points.iter().zip(&e.exponents) {
                m = m + (*b - v).checked_scale(k).unwrap();
            }
            if m != e.point || e.exponents.iter().any(|&k| k < 0) {
                return fail(format!("chart identity, trial {t} at {v}: {e:?}"));
            }
        }
        let q = quadratic_presentation(&p).unwrap();
        let o = &q.point_order;
        if q.binomials
            .iter()
            .any(|b| o[b.chart] + o[b.i] != o[b.k] + o[b.l])
        {
            return fail(format!("quadric identity, trial {t}"));
        }
        if check_2d_all(&p).unwrap().len() != p.vertices().len() {
            return fail(format!("certificate count, trial {t}"));
        }
    }
    pass(format!("5 properties x {TRIALS} trials, seed {SEED}"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 lattice point counts of kΔ₃",
            Duration::from_secs(1),
            counting,
        ),
        (
            "2 Case1/Case2 sweep, 2-D at every vertex",
            Duration::from_secs(30),
            case12_sweep,
        ),
        (
            "3 Case3 sweep with Minkowski variants",
            Duration::from_secs(120),
            case3_sweep,
        ),
        (
            "4 fiber-graph oracle through degree 3",
            Duration::from_secs(300),
            oracle_cross_check,
        ),
        (
            "5 Koelman exception and 3Δ₂",
            Duration::from_secs(10),
            koelman_exception,
        ),
        (
            "6 basic diamonds on random nonsingular polygons",
            Duration::from_secs(60),
            diamonds,
        ),
        (
            "7 chi >= genus + 3 on Case1/Case2",
            Duration::from_secs(30),
            fujita,
        ),
        (
            "8 randomized property suite",
            Duration::from_secs(120),
            property_suite,
        ),
    ];
    let mut all = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = outcome.passed && in_time;
        all &= ok;
        let timing = if in_time {
            String::new()
        } else {
            format!(" (over the {limit:?} limit)")
        };
        println!(
            "{} criterion {name}: {} [{:.2}s]{timing}",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
