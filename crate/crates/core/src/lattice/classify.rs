use std::collections::{HashMap, HashSet, VecDeque};

use super::hull::convex_hull;
use super::pick::count_lattice_points;
use crate::point::LatticePoint;
use crate::shape::Shape;

const NEIGHBORS: [LatticePoint; 4] = [
    LatticePoint::new(1, 0),
    LatticePoint::new(-1, 0),
    LatticePoint::new(0, 1),
    LatticePoint::new(0, -1),
];

/// 4-connected.
pub fn is_polyomino(shape: &Shape) -> bool {
    let start = shape.points()[0];
    let mut seen: HashSet<LatticePoint> = HashSet::with_capacity(shape.len());
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    while let Some(p) = queue.pop_front() {
        for d in NEIGHBORS {
            let q = p + d;
            if shape.contains(q) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == shape.len()
}

/// Every row and every column meets the shape in one contiguous run.
pub fn is_hv_convex(shape: &Shape) -> bool {
    if shape.rows().rows().any(|r| r.runs.len() != 1) {
        return false;
    }
    let mut columns: HashMap<i64, (i64, i64, usize)> = HashMap::new();
    for p in shape.points() {
        let e = columns.entry(p.x).or_insert((p.y, p.y, 0));
        e.0 = e.0.min(p.y);
        e.1 = e.1.max(p.y);
        e.2 += 1;
    }
    columns.values().all(|&(lo, hi, count)| (hi - lo + 1) as usize == count)
}

/// No nonzero difference vector occurs for two distinct ordered pairs.
pub fn is_parallelogram_free(shape: &Shape) -> bool {
    let pts = shape.points();
    let pairs = pts.len() as u128 * (pts.len() as u128 - 1) / 2;
    let (ex, ey) = shape.extents();
    // lexicographically positive differences that fit the bounding box
    let available = ((2 * ex as u128 + 1) * (2 * ey as u128 + 1) - 1) / 2;
    if pairs > available {
        return false;
    }
    let mut seen: HashSet<LatticePoint> = HashSet::new();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            // b - a and a - b are distinct (nonzero); checking one sign of
            // each unordered pair covers both.
            if !seen.insert(b - a) {
                return false;
            }
        }
    }
    true
}

/// `conv(S) ∩ Z^2 = S`.
pub fn is_digital_convex(shape: &Shape) -> bool {
    let hull = convex_hull(shape);
    count_lattice_points(&hull).expect("convex hulls are simple").total == shape.len() as u64
}
