//! Lattice width: the minimum over nonzero integer functionals `u` of the
//! extent `max u·s - min u·s`.
//!
//! The extent is a norm on the functional once the set is not collinear, so
//! the minimizing functional is a shortest vector of `Z^2` under that norm.
//! [`lattice_width`] finds it with the generalized Gauss reduction for
//! arbitrary 2D norms. [`lattice_width_bounded`] is the direct definition
//! restricted to `max(|p|, |q|) <= bound`.

use serde::Serialize;

use super::hull::{convex_hull, convex_hull_of};
use crate::point::{gcd, Direction, LatticePoint};
use crate::shape::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WidthCertificate {
    pub width: u64,
    /// A functional achieving the width.
    pub functional: Direction,
    /// `functional` turned a quarter: the common direction of the
    /// `width + 1` covering Diophantine lines.
    pub line_direction: Direction,
}

impl WidthCertificate {
    fn new(width: u64, functional: Direction) -> Self {
        WidthCertificate {
            width,
            functional,
            line_direction: functional.rot90(),
        }
    }
}

/// `max u·s - min u·s` over the given points.
pub fn extent_of(points: &[LatticePoint], u: LatticePoint) -> i64 {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for p in points {
        let v = u.dot(*p);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    hi - lo
}

pub fn extent(shape: &Shape, functional: Direction) -> u64 {
    extent_of(&convex_hull(shape), functional.as_point()) as u64
}

pub fn lattice_width(shape: &Shape) -> WidthCertificate {
    width_of_hull(&convex_hull(shape))
}

/// Lattice width of an arbitrary finite point set.
pub fn lattice_width_of(points: &[LatticePoint]) -> WidthCertificate {
    width_of_hull(&convex_hull_of(points))
}

/// Tie-breaking key among functionals of equal extent.
fn tie_key(d: Direction) -> (i64, i64, i64) {
    (d.p().abs() + d.q().abs(), d.p(), d.q())
}

/// Lattice width from CCW hull vertices.
pub fn width_of_hull(hull: &[LatticePoint]) -> WidthCertificate {
    match hull.len() {
        0 | 1 => WidthCertificate::new(0, Direction::NORTH),
        2 => {
            let along = Direction::primitive_of(hull[1] - hull[0]).expect("distinct hull vertices");
            WidthCertificate::new(0, along.rot90().canonical_sign())
        }
        _ => {
            let h = |v: LatticePoint| extent_of(hull, v);
            let (b1, b2) = gauss_reduce(&h);
            let width = h(b1);
            let mut best: Option<Direction> = None;
            for a in -3i64..=3 {
                for c in -3i64..=3 {
                    let v = b1 * a + b2 * c;
                    if v.is_origin() || gcd(v.x, v.y) != 1 || h(v) != width {
                        continue;
                    }
                    let d = Direction::primitive_of(v).expect("nonzero").canonical_sign();
                    if best.map_or(true, |b| tie_key(d) < tie_key(b)) {
                        best = Some(d);
                    }
                }
            }
            WidthCertificate::new(width as u64, best.expect("b1 itself qualifies"))
        }
    }
}

/// Reduced basis `(b1, b2)` of `Z^2` for the norm `h`: `h(b1) <= h(b2)` and
/// `h(b2) <= h(b2 + k b1)` for every integer `k`. Then `b1` is a shortest
/// nonzero vector.
fn gauss_reduce(h: &impl Fn(LatticePoint) -> i64) -> (LatticePoint, LatticePoint) {
    let mut b1 = LatticePoint::new(1, 0);
    let mut b2 = LatticePoint::new(0, 1);
    if h(b1) > h(b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let k = argmin_multiple(h, b1, b2);
        b2 = b2 - b1 * k;
        if h(b2) < h(b1) {
            std::mem::swap(&mut b1, &mut b2);
        } else {
            return (b1, b2);
        }
    }
}

/// Leftmost integer `k` minimizing the convex function `h(b2 - k b1)`.
fn argmin_multiple(h: &impl Fn(LatticePoint) -> i64, b1: LatticePoint, b2: LatticePoint) -> i64 {
    let f = |k: i64| h(b2 - b1 * k);
    // h(b2 - k b1) >= |k| h(b1) - h(b2), so minimizers satisfy |k| <= 2 h(b2) / h(b1).
    let bound = 2 * h(b2) / h(b1).max(1) + 1;
    let (mut lo, mut hi) = (-bound, bound);
    // first k in [lo, hi] with f(k + 1) >= f(k)
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if f(mid + 1) >= f(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Enumeration bound `2 (Ex + Ey) (min(Ex, Ey) + 1)` on `max(|p|, |q|)`,
/// where `Ex`, `Ey` are the axis extents.
pub fn width_search_bound(shape: &Shape) -> i64 {
    let (ex, ey) = shape.extents();
    (2 * (ex + ey) * (ex.min(ey) + 1)).max(1)
}

/// Minimum extent over functionals with `max(|p|, |q|) <= bound`.
///
/// For each `q` the extent is convex in `p`, so each column of functionals
/// is minimized by an integer convex search; non-primitive vectors never
/// beat their primitive part, so the minimum is the minimum over primitive
/// functionals.
pub fn lattice_width_bounded(shape: &Shape, bound: i64) -> WidthCertificate {
    let hull = convex_hull(shape);
    if hull.len() <= 2 {
        return width_of_hull(&hull);
    }
    let h = |v: LatticePoint| extent_of(&hull, v);
    let mut best = (h(LatticePoint::new(1, 0)), LatticePoint::new(1, 0));
    for q in 1..=bound {
        let f = |p: i64| h(LatticePoint::new(p, q));
        let (mut lo, mut hi) = (-bound, bound);
        while lo < hi {
            let mid = lo + (hi - lo).div_euclid(2);
            if f(mid + 1) >= f(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let v = f(lo);
        if v < best.0 {
            best = (v, LatticePoint::new(lo, q));
        }
    }
    let functional = Direction::primitive_of(best.1).expect("nonzero").canonical_sign();
    WidthCertificate::new(h(functional.as_point()) as u64, functional)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(w: i64, h: i64) -> Shape {
        Shape::new((0..w).flat_map(|x| (0..h).map(move |y| LatticePoint::new(x, y)))).unwrap()
    }

    #[test]
    fn collinear_width_is_zero() {
        let seg = Shape::from_coords(&[(0, 0), (1, 0), (2, 0), (3, 0)]).unwrap();
        let c = lattice_width(&seg);
        assert_eq!(c.width, 0);
        assert_eq!(c.functional, Direction::NORTH);
        assert_eq!(c.line_direction, c.functional.rot90());
    }

    #[test]
    fn block_and_tromino() {
        assert_eq!(lattice_width(&block(3, 3)).width, 2);
        let l = Shape::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let c = lattice_width(&l);
        assert_eq!(c.width, 1);
        assert_eq!(extent(&l, Direction::new(1, 1).unwrap()), 1);
        assert_eq!(extent(&l, c.functional), 1);
    }

    #[test]
    fn extent_examples() {
        let seg = Shape::from_coords(&[(0, 0), (1, 0), (2, 0), (3, 0)]).unwrap();
        assert_eq!(extent(&seg, Direction::EAST), 3);
        assert_eq!(extent(&seg, Direction::NORTH), 0);
    }

    #[test]
    fn skew_strip_uses_diagonal_functional() {
        // Points (i, i) and (i, i + 1): width 1 along (1, -1).
        let s = Shape::new((0..50).flat_map(|i| [LatticePoint::new(i, i), LatticePoint::new(i, i + 1)])).unwrap();
        let c = lattice_width(&s);
        assert_eq!(c.width, 1);
        assert_eq!(c.functional, Direction::new(1, -1).unwrap());
    }
}
