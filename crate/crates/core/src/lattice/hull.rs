use crate::point::{gcd, LatticePoint};
use crate::shape::Shape;

/// Twice the signed area of triangle `o, a, b`; positive for a left turn.
pub fn orient(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
    (a - o).cross(b - o)
}

/// Convex hull by monotone chain, counterclockwise, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped:
/// a collinear input yields its two extreme points and a single point yields
/// itself.
pub fn convex_hull_of(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.truncate(1);
    }
    lower
}

pub fn convex_hull(shape: &Shape) -> Vec<LatticePoint> {
    // Only run endpoints can be hull vertices.
    convex_hull_of(&shape.rows().run_endpoints())
}

/// All lattice points of the convex polygon with the given CCW vertices
/// (as produced by [`convex_hull_of`]), in row-major order.
pub fn lattice_points_in_convex(hull: &[LatticePoint]) -> Vec<LatticePoint> {
    match hull.len() {
        0 => Vec::new(),
        1 => vec![hull[0]],
        2 => {
            let (a, b) = (hull[0], hull[1]);
            let d = b - a;
            let g = gcd(d.x, d.y);
            let step = LatticePoint::new(d.x / g, d.y / g);
            let mut out: Vec<_> = (0..=g).map(|k| a + step * k).collect();
            out.sort_unstable_by_key(|p| (p.y, p.x));
            out
        }
        _ => {
            let min_y = hull.iter().map(|p| p.y).min().expect("non-empty");
            let max_y = hull.iter().map(|p| p.y).max().expect("non-empty");
            let mut out = Vec::new();
            for y in min_y..=max_y {
                if let Some((lo, hi)) = row_span(hull, y) {
                    out.extend((lo..=hi).map(|x| LatticePoint::new(x, y)));
                }
            }
            out
        }
    }
}

/// Integer x-range of row `y` inside a CCW convex polygon with at least
/// three vertices.
pub(crate) fn row_span(hull: &[LatticePoint], y: i64) -> Option<(i64, i64)> {
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for i in 0..hull.len() {
        let a = hull[i];
        let e = hull[(i + 1) % hull.len()] - a;
        // inside iff e.x * (y - a.y) - e.y * (x - a.x) >= 0
        let c = e.x * (y - a.y) + e.y * a.x;
        if e.y == 0 {
            if c < 0 {
                return None;
            }
        } else if e.y > 0 {
            // e.y * x <= c
            hi = hi.min(c.div_euclid(e.y));
        } else {
            // (-e.y) * x >= -c
            lo = lo.max(div_ceil(-c, -e.y));
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn square_hull_is_ccw() {
        let hull = convex_hull_of(&[p(0, 0), p(1, 0), p(0, 1), p(1, 1)]);
        assert_eq!(hull, vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
        for i in 0..4 {
            assert!(orient(hull[i], hull[(i + 1) % 4], hull[(i + 2) % 4]) > 0);
        }
    }

    #[test]
    fn degenerate_hulls() {
        assert_eq!(convex_hull_of(&[p(0, 0), p(1, 0), p(2, 0)]), vec![p(0, 0), p(2, 0)]);
        assert_eq!(convex_hull_of(&[p(0, 0)]), vec![p(0, 0)]);
        assert_eq!(convex_hull_of(&[p(2, 2), p(0, 0), p(1, 1)]), vec![p(0, 0), p(2, 2)]);
    }

    #[test]
    fn fills_triangle() {
        let hull = convex_hull_of(&[p(0, 0), p(4, 0), p(0, 4)]);
        let pts = lattice_points_in_convex(&hull);
        assert_eq!(pts.len(), 15);
        assert!(pts.iter().all(|q| q.x >= 0 && q.y >= 0 && q.x + q.y <= 4));
    }

    #[test]
    fn fills_diagonal_segment() {
        let pts = lattice_points_in_convex(&[p(0, 0), p(3, 6)]);
        assert_eq!(pts, vec![p(0, 0), p(1, 2), p(2, 4), p(3, 6)]);
    }
}
