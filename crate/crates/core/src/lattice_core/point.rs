use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted from callers.
pub const MAX_COORD: i64 = 1_000_000;

/// A point of the lattice Z² or Z³.
///
/// Points order graded-lexicographically: first by coordinate sum, then
/// lexicographically. This is the canonical order used for every list of
/// lattice points in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    dim: u8,
    coords: [i64; 3],
}

impl LatticePoint {
    pub const fn new2(x: i64, y: i64) -> Self {
        Self {
            dim: 2,
            coords: [x, y, 0],
        }
    }

    pub const fn new3(x: i64, y: i64, z: i64) -> Self {
        Self {
            dim: 3,
            coords: [x, y, z],
        }
    }

    pub fn from_slice(coords: &[i64]) -> Result<Self> {
        match *coords {
            [x, y] => Ok(Self::new2(x, y)),
            [x, y, z] => Ok(Self::new3(x, y, z)),
            _ => Err(Error::UnsupportedDimension(coords.len())),
        }
    }

    pub const fn origin(dim: usize) -> Self {
        Self {
            dim: dim as u8,
            coords: [0; 3],
        }
    }

    /// The `i`-th standard basis vector of Z^dim.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut p = Self::origin(dim);
        p.coords[i] = 1;
        p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    #[inline]
    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.dim as usize]
    }

    #[inline]
    pub fn x(&self) -> i64 {
        self.coords[0]
    }

    #[inline]
    pub fn y(&self) -> i64 {
        self.coords[1]
    }

    #[inline]
    pub fn z(&self) -> i64 {
        self.coords[2]
    }

    pub fn is_origin(&self) -> bool {
        self.coords == [0; 3]
    }

    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.coords().iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn check_bound(&self, bound: i64) -> Result<()> {
        match self.coords().iter().find(|c| c.abs() > bound) {
            Some(&value) => Err(Error::CoordinateTooLarge { value, bound }),
            None => Ok(()),
        }
    }

    fn zip_checked(self, other: Self, f: fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut coords = [0; 3];
        for (k, c) in coords.iter_mut().enumerate() {
            *c = f(self.coords[k], other.coords[k]).ok_or(Error::Overflow)?;
        }
        Ok(Self {
            dim: self.dim,
            coords,
        })
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.zip_checked(other, i64::checked_add)
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.zip_checked(other, i64::checked_sub)
    }

    pub fn checked_scale(self, k: i64) -> Result<Self> {
        let mut coords = [0; 3];
        for (c, &v) in coords.iter_mut().zip(&self.coords) {
            *c = v.checked_mul(k).ok_or(Error::Overflow)?;
        }
        Ok(Self {
            dim: self.dim,
            coords,
        })
    }

    /// Exact division by `k`; `None` when some coordinate is not divisible.
    pub fn div_exact(self, k: i64) -> Option<Self> {
        if k == 0 || self.coords.iter().any(|c| c % k != 0) {
            return None;
        }
        let mut coords = self.coords;
        coords.iter_mut().for_each(|c| *c /= k);
        Some(Self {
            dim: self.dim,
            coords,
        })
    }

    pub fn dot(&self, other: &Self) -> i128 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum()
    }

    /// gcd of the absolute values of the coordinates (0 for the origin).
    pub fn content(&self) -> i64 {
        self.coords().iter().fold(0, |g, &c| gcd(g, c))
    }

    /// The primitive vector on the ray through `self`, or `None` for the origin.
    pub fn primitive(self) -> Option<Self> {
        let g = self.content();
        if g == 0 {
            None
        } else {
            self.div_exact(g)
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Drops the last coordinate of a 3D point.
    pub fn project2(&self) -> Self {
        Self::new2(self.coords[0], self.coords[1])
    }

    /// Extends a 2D point by a third coordinate.
    pub fn lift3(&self, z: i64) -> Self {
        Self::new3(self.coords[0], self.coords[1], z)
    }
}

/// Non-negative gcd.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// 2x2 determinant of two 2D vectors.
pub fn det2(u: &LatticePoint, w: &LatticePoint) -> i128 {
    u.x() as i128 * w.y() as i128 - u.y() as i128 * w.x() as i128
}

/// 3x3 determinant with rows `a`, `b`, `c`.
pub fn det3(a: &LatticePoint, b: &LatticePoint, c: &LatticePoint) -> i128 {
    let (a0, a1, a2) = (a.x() as i128, a.y() as i128, a.z() as i128);
    let (b0, b1, b2) = (b.x() as i128, b.y() as i128, b.z() as i128);
    let (c0, c1, c2) = (c.x() as i128, c.y() as i128, c.z() as i128);
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}

/// Determinant of `dim` vectors (2 or 3 of them).
pub fn det(vectors: &[LatticePoint]) -> i128 {
    match vectors {
        [u, w] => det2(u, w),
        [a, b, c] => det3(a, b, c),
        _ => 0,
    }
}

/// Cross product, `None` on overflow.
pub fn cross(a: &LatticePoint, b: &LatticePoint) -> Option<LatticePoint> {
    let c = |x: i128| i64::try_from(x).ok();
    let (a0, a1, a2) = (a.x() as i128, a.y() as i128, a.z() as i128);
    let (b0, b1, b2) = (b.x() as i128, b.y() as i128, b.z() as i128);
    Some(LatticePoint::new3(
        c(a1 * b2 - a2 * b1)?,
        c(a2 * b0 - a0 * b2)?,
        c(a0 * b1 - a1 * b0)?,
    ))
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then_with(|| self.coord_sum().cmp(&other.coord_sum()))
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Operators panic on overflow instead of wrapping; fallible callers use the
// `checked_*` methods.
impl Add for LatticePoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("lattice coordinate overflow")
    }
}

impl Sub for LatticePoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("lattice coordinate overflow")
    }
}

impl Neg for LatticePoint {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_scale(-1).expect("lattice coordinate overflow")
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<i64>::deserialize(deserializer)?;
        LatticePoint::from_slice(&coords).map_err(serde::de::Error::custom)
    }
}
