//! The quadrilateral behind the area/width inequality for digital convex
//! sets: a diameter pair `a, b` and the two extreme points `x, y` under the
//! functional orthogonal to `b - a`.

use serde::Serialize;

use super::diameter::diameter_line;
use super::pick::{count_lattice_points, PickDecomposition};
use super::width::lattice_width;
use crate::point::LatticePoint;
use crate::shape::Shape;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("shape is collinear; the quadrilateral is undefined")]
    Collinear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlaschkeWitness {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub x: LatticePoint,
    pub y: LatticePoint,
    /// Twice the area of `x a y b`, i.e. `|det(y - x, b - a)|`.
    pub twice_area: i64,
    pub diameter: u64,
    pub width: u64,
    /// Lattice-point census of `x a y b`; `None` when the four points do not
    /// span a proper quadrilateral (`x` or `y` on the line `ab`).
    pub quad: Option<PickDecomposition>,
}

impl BlaschkeWitness {
    /// `A >= d w / 2`.
    pub fn area_bound_holds(&self) -> bool {
        self.twice_area as i128 >= self.diameter as i128 * self.width as i128
    }

    /// `n >= d w / 2 + 3`, defined only for a proper quadrilateral (which
    /// has at least four boundary points).
    pub fn count_bound_holds(&self, n: usize) -> Option<bool> {
        self.quad
            .map(|_| 2 * n as i128 >= self.diameter as i128 * self.width as i128 + 6)
    }

    pub fn is_degenerate(&self) -> bool {
        self.quad.is_none()
    }
}

pub fn blaschke_witness(shape: &Shape) -> Result<BlaschkeWitness, WitnessError> {
    let line = diameter_line(shape).ok_or(WitnessError::Collinear)?;
    let width = lattice_width(shape);
    if width.width == 0 {
        return Err(WitnessError::Collinear);
    }
    let u = line.direction().rot90().as_point();
    let pts = shape.points();
    // strict comparisons over sorted points keep the lexicographically
    // smallest point on ties
    let mut x = pts[0];
    let mut y = pts[0];
    for &s in pts {
        if u.dot(s) < u.dot(x) {
            x = s;
        }
        if u.dot(s) > u.dot(y) {
            y = s;
        }
    }
    let (a, b) = (line.a, line.b);
    let twice_area = (y - x).cross(b - a).abs();
    let level = u.dot(a);
    let quad = if u.dot(x) < level && level < u.dot(y) {
        Some(count_lattice_points(&[x, a, y, b]).expect("x and y lie on opposite sides of ab"))
    } else {
        None
    };
    Ok(BlaschkeWitness {
        a,
        b,
        x,
        y,
        twice_area,
        diameter: line.diameter,
        width: width.width,
        quad,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(w: i64, h: i64) -> Shape {
        Shape::new((0..w).flat_map(|x| (0..h).map(move |y| LatticePoint::new(x, y)))).unwrap()
    }

    #[test]
    fn three_by_three_block() {
        let w = blaschke_witness(&block(3, 3)).unwrap();
        assert_eq!((w.diameter, w.width), (2, 2));
        assert!(w.twice_area >= 4);
        assert!(w.area_bound_holds());
    }

    #[test]
    fn five_by_five_block() {
        let s = block(5, 5);
        let w = blaschke_witness(&s).unwrap();
        assert_eq!((w.diameter, w.width), (4, 4));
        assert!(w.area_bound_holds());
        // 25 >= 8 + 3
        if let Some(ok) = w.count_bound_holds(s.len()) {
            assert!(ok);
        }
    }

    #[test]
    fn l_tromino_witness_is_degenerate() {
        let s = Shape::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        let w = blaschke_witness(&s).unwrap();
        assert_eq!((w.diameter, w.width), (1, 1));
        // n = 3 < 1/2 + 3, so the count bound cannot hold here; the
        // quadrilateral collapses to the triangle itself.
        assert!(w.is_degenerate());
        assert_eq!(w.count_bound_holds(3), None);
        assert!(w.area_bound_holds());
    }

    #[test]
    fn collinear_is_rejected() {
        let s = Shape::from_coords(&[(0, 0), (1, 1), (2, 2)]).unwrap();
        assert_eq!(blaschke_witness(&s), Err(WitnessError::Collinear));
        let single = Shape::from_coords(&[(4, 4)]).unwrap();
        assert_eq!(blaschke_witness(&single), Err(WitnessError::Collinear));
    }
}
