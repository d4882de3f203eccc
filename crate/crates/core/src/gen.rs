//! Seeded shape generators.
//!
//! Randomness comes from xoshiro256++ seeded through SplitMix64 (the
//! reference `seed_from_u64`). Bounded integers use Lemire's
//! multiply-high method with rejection, so a generator's output depends
//! only on its [`GenSpec`].

use std::collections::HashSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::lattice::{
    convex_hull_of, count_lattice_points, is_digital_convex, is_hv_convex, is_parallelogram_free,
    is_polyomino, lattice_points_in_convex,
};
use crate::point::LatticePoint;
use crate::shape::Shape;

#[derive(Debug)]
pub struct Rng(Xoshiro256PlusPlus);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..bound`; `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = self.next_u64() as u128 * bound as u128;
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ShapeClass {
    Segment { len: usize },
    Rectangle { width: usize, height: usize },
    HvConvex { n: usize },
    DigitalConvex { n: usize },
    ParallelogramFree { n: usize },
    RandomPolyomino { n: usize },
}

impl ShapeClass {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeClass::Segment { .. } => "segment",
            ShapeClass::Rectangle { .. } => "rectangle",
            ShapeClass::HvConvex { .. } => "hv_convex",
            ShapeClass::DigitalConvex { .. } => "digital_convex",
            ShapeClass::ParallelogramFree { .. } => "parallelogram_free",
            ShapeClass::RandomPolyomino { .. } => "random_polyomino",
        }
    }

    /// The class predicate a generated shape must pass.
    pub fn predicate(&self, shape: &Shape) -> bool {
        match self {
            ShapeClass::Segment { .. } | ShapeClass::Rectangle { .. } => {
                is_hv_convex(shape) && is_digital_convex(shape) && is_polyomino(shape)
            }
            ShapeClass::HvConvex { .. } => is_polyomino(shape) && is_hv_convex(shape),
            ShapeClass::DigitalConvex { .. } => is_digital_convex(shape),
            ShapeClass::ParallelogramFree { .. } => is_parallelogram_free(shape),
            ShapeClass::RandomPolyomino { .. } => is_polyomino(shape),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub class: ShapeClass,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(class: ShapeClass, seed: u64) -> Self {
        GenSpec { class, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("{class} generation failed after {attempts} attempts")]
    Exhausted { class: &'static str, attempts: u32 },
}

const ATTEMPTS: u32 = 64;

pub fn generate(spec: &GenSpec) -> Result<Shape, GenError> {
    let mut rng = Rng::new(spec.seed);
    let shape = match spec.class {
        ShapeClass::Segment { len } => {
            nonzero(len)?;
            Shape::new((0..len as i64).map(|x| LatticePoint::new(x, 0)))
        }
        ShapeClass::Rectangle { width, height } => {
            nonzero(width)?;
            nonzero(height)?;
            Shape::new((0..height as i64).flat_map(|y| (0..width as i64).map(move |x| LatticePoint::new(x, y))))
        }
        ShapeClass::HvConvex { n } => {
            nonzero(n)?;
            return retry(spec, || hv_convex(n, &mut rng));
        }
        ShapeClass::DigitalConvex { n } => {
            nonzero(n)?;
            return retry(spec, || digital_convex(n, &mut rng));
        }
        ShapeClass::ParallelogramFree { n } => {
            nonzero(n)?;
            Ok(parallelogram_free(n, &mut rng))
        }
        ShapeClass::RandomPolyomino { n } => {
            nonzero(n)?;
            Ok(random_polyomino(n, &mut rng))
        }
    }
    .expect("generators emit distinct points");
    Ok(shape.normalize())
}

fn nonzero(v: usize) -> Result<(), GenError> {
    if v == 0 {
        Err(GenError::ZeroSize)
    } else {
        Ok(())
    }
}

fn retry(spec: &GenSpec, mut attempt: impl FnMut() -> Option<Shape>) -> Result<Shape, GenError> {
    for _ in 0..ATTEMPTS {
        if let Some(s) = attempt() {
            let s = s.normalize();
            if spec.class.predicate(&s) {
                return Ok(s);
            }
        }
    }
    Err(GenError::Exhausted {
        class: spec.class.name(),
        attempts: ATTEMPTS,
    })
}

/// Rows stacked bottom to top. Left ends follow a valley (non-increasing,
/// then non-decreasing) and right ends a peak, so every column meets the
/// rows in an interval; consecutive rows overlap. The turning rows and the
/// step size are drawn so the widest row is near `width`. The row that
/// would overshoot `n` is cut to the remainder and ends the shape.
fn hv_convex(n: usize, rng: &mut Rng) -> Option<Shape> {
    let n = n as i64;
    let root = (n as f64).sqrt();
    let width = rng.range((root / 2.0).ceil() as i64, (2.0 * root).ceil() as i64).max(1);
    let height = (2 * n / width).max(1);
    let step = (2 * width / height).max(1);
    let valley = rng.range(height / 4, (3 * height / 4).max(height / 4));
    let peak = rng.range(height / 4, (3 * height / 4).max(height / 4));
    let (mut l, mut r) = (0i64, rng.range(0, width / 4).min(n - 1));
    let mut rows = vec![(l, r)];
    let mut total = r - l + 1;
    let mut y = 0;
    while total < n {
        y += 1;
        let mut nl = if y <= valley { l - rng.range(0, step) } else { l + rng.range(0, step) };
        let nr = if y <= peak { r + rng.range(0, step) } else { r - rng.range(0, step) };
        if nr < l {
            return None;
        }
        nl = nl.min(nr);
        let rem = n - total;
        let row = if nr - nl + 1 <= rem {
            (nl, nr)
        } else if rem <= r - l + 1 {
            (l, l + rem - 1)
        } else {
            let a = nl.max(r - rem + 1);
            (a, a + rem - 1)
        };
        rows.push(row);
        total += row.1 - row.0 + 1;
        (l, r) = row;
    }
    Shape::new(
        rows.iter()
            .enumerate()
            .flat_map(|(y, &(a, b))| (a..=b).map(move |x| LatticePoint::new(x, y as i64))),
    )
    .ok()
}

const UNIT: i64 = 1 << 20;

/// Hull of 3 to 12 random points of a disc at the smallest scale holding at
/// least `n` lattice points, then filled. Rejected when rounding overshoots
/// `n` by more than 20%.
fn digital_convex(n: usize, rng: &mut Rng) -> Option<Shape> {
    let m = 3 + rng.below(10) as usize;
    let mut unit: Vec<LatticePoint> = Vec::with_capacity(m);
    while unit.len() < m {
        let p = LatticePoint::new(rng.range(-UNIT, UNIT), rng.range(-UNIT, UNIT));
        if p.x * p.x + p.y * p.y <= UNIT * UNIT {
            unit.push(p);
        }
    }
    // radius in 1/64 lattice units
    let scaled = |r64: i64| -> Vec<LatticePoint> {
        let hull: Vec<_> = unit
            .iter()
            .map(|q| LatticePoint::new((q.x * r64).div_euclid(UNIT * 64), (q.y * r64).div_euclid(UNIT * 64)))
            .collect();
        convex_hull_of(&hull)
    };
    let count = |r64: i64| count_lattice_points(&scaled(r64)).expect("hull").total as i64;
    let n = n as i64;
    let (lo_target, hi_target) = ((4 * n + 4) / 5, (6 * n) / 5);
    let isqrt = (n as f64).sqrt() as i64;
    let (mut lo, mut hi) = (0i64, 64 * (8 * isqrt + 16));
    if count(hi) < n {
        return None;
    }
    // smallest radius reaching n
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if count(mid) >= n {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let c = count(lo);
    if c < lo_target || c > hi_target.max(lo_target) {
        return None;
    }
    Shape::new(lattice_points_in_convex(&scaled(lo))).ok()
}

/// Greedy insertion of random points of a growing box, rejecting any point
/// that would repeat a difference vector.
fn parallelogram_free(n: usize, rng: &mut Rng) -> Shape {
    let mut pts = vec![LatticePoint::ORIGIN];
    let mut diffs: HashSet<LatticePoint> = HashSet::new();
    let mut side = (n as i64).max(2);
    let mut failures = 0u32;
    while pts.len() < n {
        let z = LatticePoint::new(rng.below(side as u64) as i64, rng.below(side as u64) as i64);
        let fresh: Vec<LatticePoint> = pts.iter().map(|&a| z - a).collect();
        let mut new_set: HashSet<LatticePoint> = HashSet::with_capacity(2 * fresh.len());
        let ok = fresh.iter().all(|&d| {
            !d.is_origin() && !diffs.contains(&d) && new_set.insert(d) && new_set.insert(-d)
        });
        if ok {
            diffs.extend(new_set);
            pts.push(z);
            failures = 0;
        } else {
            failures += 1;
            if failures >= 200 {
                side += 1;
                failures = 0;
            }
        }
    }
    Shape::new(pts).expect("distinct by construction")
}

/// Eden growth: repeatedly attach a random free neighbour of a random cell.
fn random_polyomino(n: usize, rng: &mut Rng) -> Shape {
    const STEPS: [LatticePoint; 4] = [
        LatticePoint::new(1, 0),
        LatticePoint::new(-1, 0),
        LatticePoint::new(0, 1),
        LatticePoint::new(0, -1),
    ];
    let mut cells = vec![LatticePoint::ORIGIN];
    let mut seen: HashSet<LatticePoint> = HashSet::from([LatticePoint::ORIGIN]);
    while cells.len() < n {
        let c = cells[rng.below(cells.len() as u64) as usize];
        let q = c + STEPS[rng.below(4) as usize];
        if seen.insert(q) {
            cells.push(q);
        }
    }
    Shape::new(cells).expect("distinct by construction")
}

/// Specs for `count` shapes of one class with sizes log-spaced over
/// `lo..=hi`, seeds derived from `seed`.
pub fn log_spaced_specs(make: impl Fn(usize) -> ShapeClass, lo: usize, hi: usize, count: usize, seed: u64) -> Vec<GenSpec> {
    let mut rng = Rng::new(seed);
    (0..count)
        .map(|i| {
            let t = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.0 };
            let n = ((lo as f64).ln() + t * ((hi as f64).ln() - (lo as f64).ln())).exp().round() as usize;
            GenSpec::new(make(n.clamp(lo, hi)), rng.next_u64())
        })
        .collect()
}
