//! The ship shape: a finite, non-empty set of lattice points.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::point::LatticePoint;
use crate::rows::RowSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("shape has no points")]
    Empty,
    #[error("duplicate point {0}")]
    Duplicate(LatticePoint),
}

/// A finite non-empty lattice set, stored sorted and duplicate-free.
///
/// Translation to the canonical frame (min x = min y = 0) is never applied
/// implicitly; call [`Shape::normalize`].
#[derive(Debug, Clone)]
pub struct Shape {
    points: Vec<LatticePoint>,
    index: OnceLock<ShapeIndex>,
}

#[derive(Debug, Clone)]
struct ShapeIndex {
    membership: Membership,
    rows: RowSet,
    perimeter: usize,
}

#[derive(Debug, Clone)]
enum Membership {
    Dense {
        min: LatticePoint,
        width: i64,
        height: i64,
        cells: Vec<bool>,
    },
    Sparse(HashSet<LatticePoint>),
}

impl Membership {
    fn build(points: &[LatticePoint], min: LatticePoint, max: LatticePoint) -> Self {
        let width = max.x - min.x + 1;
        let height = max.y - min.y + 1;
        let area = width as u128 * height as u128;
        if area <= (16 * points.len() as u128).max(1 << 16) {
            let mut cells = vec![false; area as usize];
            for p in points {
                cells[((p.y - min.y) * width + (p.x - min.x)) as usize] = true;
            }
            Membership::Dense {
                min,
                width,
                height,
                cells,
            }
        } else {
            Membership::Sparse(points.iter().copied().collect())
        }
    }

    fn contains(&self, p: LatticePoint) -> bool {
        match self {
            Membership::Dense {
                min,
                width,
                height,
                cells,
            } => {
                let (dx, dy) = (p.x - min.x, p.y - min.y);
                dx >= 0 && dy >= 0 && dx < *width && dy < *height && cells[(dy * width + dx) as usize]
            }
            Membership::Sparse(set) => set.contains(&p),
        }
    }
}

impl PartialEq for Shape {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for Shape {}

impl Shape {
    pub fn new<I: IntoIterator<Item = LatticePoint>>(points: I) -> Result<Self, ShapeError> {
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        if points.is_empty() {
            return Err(ShapeError::Empty);
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(ShapeError::Duplicate(w[0]));
        }
        Ok(Shape {
            points,
            index: OnceLock::new(),
        })
    }

    /// Convenience constructor for literal coordinate lists.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self, ShapeError> {
        Self::new(coords.iter().map(|&(x, y)| LatticePoint::new(x, y)))
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; shapes are non-empty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_corner(&self) -> LatticePoint {
        let min_x = self.points[0].x;
        let min_y = self.points.iter().map(|p| p.y).min().expect("non-empty");
        LatticePoint::new(min_x, min_y)
    }

    pub fn max_corner(&self) -> LatticePoint {
        let max_x = self.points[self.points.len() - 1].x;
        let max_y = self.points.iter().map(|p| p.y).max().expect("non-empty");
        LatticePoint::new(max_x, max_y)
    }

    /// Axis-aligned extents `(max x - min x, max y - min y)`.
    pub fn extents(&self) -> (i64, i64) {
        let (lo, hi) = (self.min_corner(), self.max_corner());
        (hi.x - lo.x, hi.y - lo.y)
    }

    pub fn translate(&self, by: LatticePoint) -> Shape {
        Shape {
            points: self.points.iter().map(|&p| p + by).collect(),
            index: OnceLock::new(),
        }
    }

    /// Translate so that min x = min y = 0. Idempotent.
    pub fn normalize(&self) -> Shape {
        let lo = self.min_corner();
        if lo.is_origin() {
            return self.clone();
        }
        self.translate(-lo)
    }

    pub fn is_normalized(&self) -> bool {
        self.min_corner().is_origin()
    }

    fn index(&self) -> &ShapeIndex {
        self.index.get_or_init(|| {
            let membership = Membership::build(&self.points, self.min_corner(), self.max_corner());
            let rows = RowSet::from_points(self.points.iter().copied());
            let mut adjacent = 0usize;
            for &p in &self.points {
                if membership.contains(p + LatticePoint::new(1, 0)) {
                    adjacent += 1;
                }
                if membership.contains(p + LatticePoint::new(0, 1)) {
                    adjacent += 1;
                }
            }
            ShapeIndex {
                membership,
                rows,
                perimeter: 4 * self.points.len() - 2 * adjacent,
            }
        })
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.index().membership.contains(p)
    }

    pub fn rows(&self) -> &RowSet {
        &self.index().rows
    }

    /// Number of unit edges between a point of the shape and a non-point.
    pub fn perimeter(&self) -> usize {
        self.index().perimeter
    }
}
