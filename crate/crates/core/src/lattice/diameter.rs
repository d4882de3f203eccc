//! Lattice diameter: the largest number of collinear points, minus one.
//!
//! Points on a common line with primitive direction `v` share the value of
//! `v × s`, so the best line in direction `v` is the most frequent key.
//! Small sets use the all-pairs scan; large sets enumerate only directions
//! short enough that a line in that direction could still hold the current
//! record number of points within the Euclidean diameter.

use std::collections::HashMap;

use serde::Serialize;

use super::hull::convex_hull;
use crate::point::{Direction, LatticePoint};
use crate::shape::Shape;

/// A line realizing the lattice diameter. `a` and `b` are the
/// lexicographically smallest and largest points of the shape on it; among
/// all optimal lines the pair `(a, b)` is lexicographically smallest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiameterLine {
    pub diameter: u64,
    pub a: LatticePoint,
    pub b: LatticePoint,
}

impl DiameterLine {
    pub fn direction(&self) -> Direction {
        Direction::primitive_of(self.b - self.a).expect("distinct endpoints")
    }
}

pub fn lattice_diameter(shape: &Shape) -> u64 {
    diameter_line(shape).map_or(0, |l| l.diameter)
}

/// `None` for a single point.
pub fn diameter_line(shape: &Shape) -> Option<DiameterLine> {
    let n = shape.len();
    if n < 2 {
        return None;
    }
    if n <= 1500 {
        return Some(by_pairs(shape.points()));
    }
    let hull = convex_hull(shape);
    let mut diam_sq: i128 = 0;
    for (i, &p) in hull.iter().enumerate() {
        for &q in &hull[i + 1..] {
            let d = q - p;
            diam_sq = diam_sq.max((d.x as i128).pow(2) + (d.y as i128).pow(2));
        }
    }

    let mut best: Option<DiameterLine> = None;
    for &(p, q) in &[(1, 0), (0, 1), (1, 1), (1, -1)] {
        merge(&mut best, along(shape.points(), Direction::new(p, q).expect("primitive")));
    }
    // A line holding m points in direction v spans (m - 1)|v| <= diameter.
    let reach = |best: &Option<DiameterLine>| -> i128 {
        let d = best.map_or(1, |l| l.diameter.max(1)) as i128;
        diam_sq / (d * d)
    };
    let estimate = reach(&best);
    if estimate.saturating_mul(n as i128) > (n as i128) * (n as i128) / 2 {
        return Some(by_pairs(shape.points()));
    }
    let radius = (estimate as f64).sqrt().ceil() as i64 + 1;
    for p in 0..=radius {
        for q in -radius..=radius {
            let Ok(dir) = Direction::new(p, q) else { continue };
            if dir != dir.canonical_sign() || matches!((p, q), (1, 0) | (0, 1) | (1, 1) | (1, -1)) {
                continue;
            }
            if ((p * p + q * q) as i128) > reach(&best) {
                continue;
            }
            merge(&mut best, along(shape.points(), dir));
        }
    }
    best
}

fn key(line: &DiameterLine) -> (std::cmp::Reverse<u64>, LatticePoint, LatticePoint) {
    (std::cmp::Reverse(line.diameter), line.a, line.b)
}

fn merge(best: &mut Option<DiameterLine>, cand: Option<DiameterLine>) {
    if let Some(c) = cand {
        if best.map_or(true, |b| key(&c) < key(&b)) {
            *best = Some(c);
        }
    }
}

/// Best line with direction `dir`, or `None` when no two points share one.
fn along(points: &[LatticePoint], dir: Direction) -> Option<DiameterLine> {
    let v = dir.as_point();
    let mut lines: HashMap<i64, (u64, LatticePoint, LatticePoint)> = HashMap::new();
    for &s in points {
        let e = lines.entry(v.cross(s)).or_insert((0, s, s));
        e.0 += 1;
        e.1 = e.1.min(s);
        e.2 = e.2.max(s);
    }
    lines
        .into_values()
        .filter(|&(c, _, _)| c >= 2)
        .map(|(c, a, b)| DiameterLine {
            diameter: c - 1,
            a,
            b,
        })
        .min_by_key(key)
}

fn by_pairs(points: &[LatticePoint]) -> DiameterLine {
    // points are sorted, so scanning j > i visits each line from its
    // lexicographically smallest point with canonical-sign directions.
    let mut best: Option<DiameterLine> = None;
    let mut groups: HashMap<Direction, (u64, LatticePoint)> = HashMap::new();
    for (i, &a) in points.iter().enumerate() {
        groups.clear();
        for &b in &points[i + 1..] {
            let d = Direction::primitive_of(b - a).expect("distinct points");
            let e = groups.entry(d).or_insert((0, b));
            e.0 += 1;
            e.1 = e.1.max(b);
        }
        for &(count, b) in groups.values() {
            merge(
                &mut best,
                Some(DiameterLine {
                    diameter: count,
                    a,
                    b,
                }),
            );
        }
    }
    best.expect("at least two points")
}
