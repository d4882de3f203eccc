use serde::Serialize;

use super::hull::orient;
use crate::point::{gcd, LatticePoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("polygon has no vertices")]
    Empty,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
}

/// Exact lattice-point census of a lattice polygon.
///
/// Area is kept doubled so it stays an integer. For proper polygons
/// `2 * total == twice_area + boundary + 2`; segments and points have zero
/// area and all their points on the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PickDecomposition {
    pub twice_area: i64,
    pub boundary: u64,
    pub interior: u64,
    pub total: u64,
}

impl PickDecomposition {
    pub fn area(&self) -> f64 {
        self.twice_area as f64 / 2.0
    }

    pub fn is_degenerate(&self) -> bool {
        self.twice_area == 0
    }
}

/// Counts lattice points of a simple polygon given by its vertex cycle
/// (either orientation). Boundary points per edge are `gcd(|dx|, |dy|)`;
/// interior points follow from Pick's formula.
pub fn count_lattice_points(polygon: &[LatticePoint]) -> Result<PickDecomposition, PolygonError> {
    if polygon.is_empty() {
        return Err(PolygonError::Empty);
    }
    let n = polygon.len();
    let twice_area: i64 = (0..n)
        .map(|i| polygon[i].cross(polygon[(i + 1) % n]))
        .sum::<i64>()
        .abs();

    if twice_area == 0 {
        // Every vertex lies on one line (or the polygon is a single point).
        let lo = *polygon.iter().min().expect("non-empty");
        let hi = *polygon.iter().max().expect("non-empty");
        let collinear = polygon.iter().all(|&v| orient(lo, hi, v) == 0);
        if !collinear {
            // Zero net area with vertices off the line: a figure-eight.
            return Err(first_crossing(polygon).unwrap_or(PolygonError::SelfIntersecting(0, 0)));
        }
        let d = hi - lo;
        let count = gcd(d.x, d.y) as u64 + 1;
        return Ok(PickDecomposition {
            twice_area: 0,
            boundary: count,
            interior: 0,
            total: count,
        });
    }

    if let Some(err) = first_crossing(polygon) {
        return Err(err);
    }
    let boundary: u64 = (0..n)
        .map(|i| {
            let d = polygon[(i + 1) % n] - polygon[i];
            gcd(d.x, d.y) as u64
        })
        .sum();
    // A = i + e/2 - 1  =>  2i = 2A - e + 2
    let interior = ((twice_area - boundary as i64 + 2) / 2) as u64;
    Ok(PickDecomposition {
        twice_area,
        boundary,
        interior,
        total: interior + boundary,
    })
}

fn on_segment(a: LatticePoint, b: LatticePoint, p: LatticePoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn segments_touch(a: LatticePoint, b: LatticePoint, c: LatticePoint, d: LatticePoint) -> bool {
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

fn first_crossing(polygon: &[LatticePoint]) -> Option<PolygonError> {
    let n = polygon.len();
    if n < 3 {
        return None;
    }
    for i in 0..n {
        let (a, b) = (polygon[i], polygon[(i + 1) % n]);
        // Adjacent edge folding back onto this one.
        let c = polygon[(i + 2) % n];
        if orient(a, b, c) == 0 && (c - b).dot(a - b) > 0 {
            return Some(PolygonError::SelfIntersecting(i, (i + 1) % n));
        }
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = (polygon[j], polygon[(j + 1) % n]);
            if segments_touch(a, b, c, d) {
                return Some(PolygonError::SelfIntersecting(i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(x, y)| LatticePoint::new(x, y)).collect()
    }

    #[test]
    fn unit_square() {
        let d = count_lattice_points(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!((d.twice_area, d.boundary, d.interior, d.total), (2, 4, 0, 4));
    }

    #[test]
    fn smallest_triangle() {
        let d = count_lattice_points(&poly(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert_eq!((d.twice_area, d.boundary, d.interior, d.total), (1, 3, 0, 3));
    }

    #[test]
    fn segment_and_point() {
        let d = count_lattice_points(&poly(&[(0, 0), (3, 0)])).unwrap();
        assert_eq!((d.twice_area, d.total), (0, 4));
        let d = count_lattice_points(&poly(&[(2, 5)])).unwrap();
        assert_eq!(d.total, 1);
    }

    #[test]
    fn clockwise_orientation_is_accepted() {
        let d = count_lattice_points(&poly(&[(0, 0), (0, 2), (2, 2), (2, 0)])).unwrap();
        assert_eq!((d.interior, d.boundary, d.total), (1, 8, 9));
    }

    #[test]
    fn bowtie_is_rejected() {
        let err = count_lattice_points(&poly(&[(0, 0), (2, 2), (2, 0), (0, 2)]));
        assert!(matches!(err, Err(PolygonError::SelfIntersecting(_, _))));
    }

    #[test]
    fn nonconvex_simple_polygon() {
        let d = count_lattice_points(&poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(d.twice_area, 6);
        assert_eq!(d.total, 8);
        assert_eq!(d.interior, 0);
    }
}
