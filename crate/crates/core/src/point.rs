//! Integer lattice points and primitive directions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of the integer lattice. Ordering is lexicographic on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn dot(self, other: LatticePoint) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// `self.x * other.y - self.y * other.x`.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_origin(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        LatticePoint { x, y }
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, rhs: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl Mul<i64> for LatticePoint {
    type Output = LatticePoint;
    fn mul(self, k: i64) -> LatticePoint {
        LatticePoint::new(self.x * k, self.y * k)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// A nonzero integer vector with coprime coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Direction {
    p: i64,
    q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("({0},{1}) is not a primitive direction")]
pub struct NotPrimitive(pub i64, pub i64);

impl Direction {
    pub const EAST: Direction = Direction { p: 1, q: 0 };
    pub const NORTH: Direction = Direction { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self, NotPrimitive> {
        if (p, q) == (0, 0) || gcd(p, q) != 1 {
            return Err(NotPrimitive(p, q));
        }
        Ok(Direction { p, q })
    }

    /// Divides out the gcd. Fails only on the zero vector.
    pub fn primitive_of(v: LatticePoint) -> Result<Self, NotPrimitive> {
        if v.is_origin() {
            return Err(NotPrimitive(0, 0));
        }
        let g = gcd(v.x, v.y);
        Ok(Direction {
            p: v.x / g,
            q: v.y / g,
        })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    /// Quarter turn counterclockwise: `(p, q) -> (-q, p)`.
    pub fn rot90(self) -> Direction {
        Direction {
            p: -self.q,
            q: self.p,
        }
    }

    pub fn reversed(self) -> Direction {
        Direction {
            p: -self.p,
            q: -self.q,
        }
    }

    /// Sign representative: `p > 0`, or `p == 0 && q > 0`.
    pub fn canonical_sign(self) -> Direction {
        if self.p > 0 || (self.p == 0 && self.q > 0) {
            self
        } else {
            self.reversed()
        }
    }

    pub fn as_point(self) -> LatticePoint {
        LatticePoint::new(self.p, self.q)
    }

    pub fn dot(self, v: LatticePoint) -> i64 {
        self.p * v.x + self.q * v.y
    }
}

impl TryFrom<(i64, i64)> for Direction {
    type Error = NotPrimitive;
    fn try_from((p, q): (i64, i64)) -> Result<Self, NotPrimitive> {
        Direction::new(p, q)
    }
}

impl From<Direction> for (i64, i64) {
    fn from(d: Direction) -> Self {
        (d.p, d.q)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}
