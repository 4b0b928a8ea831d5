use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice_core::{LatticePoint, LatticePolytope};

pub const DEFAULT_MAX_POINTS: usize = 40;
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Size guards for the exhaustive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_points: usize,
    pub max_degree: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_points: DEFAULT_MAX_POINTS,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl OracleLimits {
    /// Defaults, with `QUADRIGEN_MAX_POINTS` overriding the point rail.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(n) = std::env::var("QUADRIGEN_MAX_POINTS")
            .ok()
            .and_then(|s| s.parse().ok())
        {
            limits.max_points = n;
        }
        limits
    }

    pub fn check_fits(&self, points: usize, degree: usize) -> bool {
        self.check(points, degree).is_ok()
    }

    pub(crate) fn check(&self, points: usize, degree: usize) -> Result<()> {
        if points > self.max_points {
            return Err(Error::TooLarge(format!(
                "{points} lattice points exceed the limit {}",
                self.max_points
            )));
        }
        if degree > self.max_degree {
            return Err(Error::TooLarge(format!(
                "degree {degree} exceeds the limit {}",
                self.max_degree
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisconnectedFiber {
    pub sum: LatticePoint,
    pub size: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub fibers: usize,
    pub multisets: usize,
    /// Only the disconnected fibers are listed; every other fiber of this
    /// degree is connected.
    pub disconnected: Vec<DisconnectedFiber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberFailure {
    pub degree: usize,
    pub sum: LatticePoint,
    /// Two multisets of the fiber lying in different components.
    pub first: Vec<LatticePoint>,
    pub second: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGraphReport {
    pub degree_bound: usize,
    pub point_count: usize,
    pub degrees: Vec<DegreeVerdict>,
    pub all_connected: bool,
    pub first_failure: Option<FiberFailure>,
}

impl FiberGraphReport {
    pub fn connected_in_degree(&self, d: usize) -> bool {
        self.degrees
            .iter()
            .find(|v| v.degree == d)
            .is_some_and(|v| v.disconnected.is_empty())
    }
}

type Multiset = Vec<u8>;

fn multisets(n: usize, d: usize) -> Vec<Multiset> {
    fn rec(n: usize, d: usize, start: usize, cur: &mut Multiset, out: &mut Vec<Multiset>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(n, d, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, 0, &mut Vec::with_capacity(d), &mut out);
    out
}

/// Connectivity of every degree-`d` fiber (`d <= degree_bound`) under moves
/// that swap one pair of points for another pair with the same sum.
///
/// All fibers connected through degree `D` means the toric ideal agrees
/// with the ideal generated by its quadrics in every degree up to `D`.
pub fn fiber_graph_oracle(p: &LatticePolytope, degree_bound: usize) -> Result<FiberGraphReport> {
    fiber_graph_oracle_with_limits(p, degree_bound, OracleLimits::default())
}

pub fn fiber_graph_oracle_with_limits(
    p: &LatticePolytope,
    degree_bound: usize,
    limits: OracleLimits,
) -> Result<FiberGraphReport> {
    let points = p.lattice_points();
    limits.check(points.len(), degree_bound)?;
    if points.len() > u8::MAX as usize {
        return Err(Error::TooLarge(format!("{} lattice points", points.len())));
    }
    let n = points.len();

    let mut pairs_by_sum: HashMap<LatticePoint, Vec<(u8, u8)>> = HashMap::new();
    for a in 0..n {
        for b in a..n {
            pairs_by_sum
                .entry(points[a] + points[b])
                .or_default()
                .push((a as u8, b as u8));
        }
    }

    let mut degrees = Vec::new();
    let mut first_failure = None;
    for d in 1..=degree_bound {
        let all = multisets(n, d);
        let mut fibers: BTreeMap<LatticePoint, Vec<Multiset>> = BTreeMap::new();
        for m in &all {
            let sum = m.iter().fold(LatticePoint::origin(p.dim()), |s, &i| {
                s + points[i as usize]
            });
            fibers.entry(sum).or_default().push(m.clone());
        }
        let mut disconnected = Vec::new();
        for (sum, fiber) in &fibers {
            if fiber.len() < 2 {
                continue;
            }
            let labels = components(fiber, &points, &pairs_by_sum);
            let count = labels.iter().max().map_or(0, |&c| c + 1);
            if count > 1 {
                if first_failure.is_none() {
                    let other = labels
                        .iter()
                        .position(|&c| c != labels[0])
                        .expect("two components");
                    let expand = |m: &Multiset| m.iter().map(|&i| points[i as usize]).collect();
                    first_failure = Some(FiberFailure {
                        degree: d,
                        sum: *sum,
                        first: expand(&fiber[0]),
                        second: expand(&fiber[other]),
                    });
                }
                disconnected.push(DisconnectedFiber {
                    sum: *sum,
                    size: fiber.len(),
                    components: count,
                });
            }
        }
        degrees.push(DegreeVerdict {
            degree: d,
            fibers: fibers.len(),
            multisets: all.len(),
            disconnected,
        });
    }
    let all_connected = degrees.iter().all(|v| v.disconnected.is_empty());
    Ok(FiberGraphReport {
        degree_bound,
        point_count: n,
        degrees,
        all_connected,
        first_failure,
    })
}

/// Component label of every multiset in one fiber.
fn components(
    fiber: &[Multiset],
    points: &[LatticePoint],
    pairs_by_sum: &HashMap<LatticePoint, Vec<(u8, u8)>>,
) -> Vec<usize> {
    let index: HashMap<&Multiset, usize> = fiber.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut label = vec![usize::MAX; fiber.len()];
    let mut next = 0;
    for start in 0..fiber.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next;
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            let m = &fiber[cur];
            for a in 0..m.len() {
                for b in a + 1..m.len() {
                    if b > a + 1 && m[b] == m[b - 1] {
                        continue;
                    }
                    let sum = points[m[a] as usize] + points[m[b] as usize];
                    for &(x, y) in &pairs_by_sum[&sum] {
                        let mut moved: Multiset = m
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != a && j != b)
                            .map(|(_, &v)| v)
                            .collect();
                        moved.push(x);
                        moved.push(y);
                        moved.sort_unstable();
                        let j = index[&moved];
                        if label[j] == usize::MAX {
                            label[j] = next;
                            queue.push_back(j);
                        }
                    }
                }
            }
        }
        next += 1;
    }
    label
}
