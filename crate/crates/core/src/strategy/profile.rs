//! Hit counts of every shot at once.
//!
//! For a fixed shot row `y`, the number of positions hit by `(x, y)` is a
//! sum over pairs (run of `P` in row `r`, run of `S` in row `r + y`) of the
//! overlap length, a discrete trapezoid in `x`. A trapezoid is the
//! convolution of two interval indicators, so its second difference is
//! four unit masses; sweeping the masses recovers the count as a
//! piecewise-linear function of `x` for each shot row.

use std::collections::BTreeMap;

use crate::game::PositionSet;
use crate::point::LatticePoint;
use crate::shape::Shape;

/// A maximal stretch `start..=end` of one shot row on which the hit count
/// is `value + slope * (x - start)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Piece {
    y: i64,
    start: i64,
    end: i64,
    value: i64,
    slope: i64,
}

fn pieces(positions: &PositionSet, shape: &Shape) -> Vec<Piece> {
    let mut masses: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for prow in positions.rows().rows() {
        for srow in shape.rows().rows() {
            let y = srow.y - prow.y;
            let m = masses.entry(y).or_default();
            for pr in prow.runs {
                for sr in srow.runs {
                    let (a, b, c, d) = (sr.start, sr.end, pr.start, pr.end);
                    m.push((a - d, 1));
                    m.push((a - c + 1, -1));
                    m.push((b - d + 1, -1));
                    m.push((b - c + 2, 1));
                }
            }
        }
    }
    let mut out = Vec::new();
    for (y, mut m) in masses {
        m.sort_unstable();
        // prev = f(x - 1) at the current mass position x
        let (mut prev, mut slope) = (0i64, 0i64);
        let mut i = 0;
        while i < m.len() {
            let x = m[i].0;
            while i < m.len() && m[i].0 == x {
                slope += m[i].1;
                i += 1;
            }
            let Some(&(next, _)) = m.get(i) else { break };
            let value = prev + slope;
            if value > 0 || slope != 0 {
                out.push(Piece {
                    y,
                    start: x,
                    end: next - 1,
                    value,
                    slope,
                });
            }
            prev += slope * (next - x);
        }
    }
    out
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Lexicographically smallest shot `x` with `0 < |P ∩ (S - x)| < |P|`.
pub fn first_splitting_shot(positions: &PositionSet, shape: &Shape) -> Option<LatticePoint> {
    let m = positions.len() as i64;
    let mut best: Option<LatticePoint> = None;
    for pc in pieces(positions, shape) {
        let len = pc.end - pc.start + 1;
        if len <= 0 {
            continue;
        }
        let t = match pc.slope.signum() {
            0 => (1..m).contains(&pc.value).then_some(0),
            1 => {
                let t = div_ceil(1 - pc.value, pc.slope).max(0);
                (t < len && pc.value + pc.slope * t < m).then_some(t)
            }
            _ => {
                let t = div_ceil(pc.value - (m - 1), -pc.slope).max(0);
                (t < len && pc.value + pc.slope * t >= 1).then_some(t)
            }
        };
        if let Some(t) = t {
            let x = LatticePoint::new(pc.start + t, pc.y);
            if best.map_or(true, |b| x < b) {
                best = Some(x);
            }
        }
    }
    best
}

/// Splitting shot with the most hits (smallest miss branch); ties go to
/// the lexicographically smallest shot. Returns the shot and its hit count.
pub fn max_hit_splitting_shot(positions: &PositionSet, shape: &Shape) -> Option<(LatticePoint, usize)> {
    let m = positions.len() as i64;
    let mut best: Option<(i64, LatticePoint)> = None;
    for pc in pieces(positions, shape) {
        let len = pc.end - pc.start + 1;
        if len <= 0 {
            continue;
        }
        let t = match pc.slope.signum() {
            0 => 0,
            1 => ((m - 1 - pc.value).div_euclid(pc.slope)).min(len - 1),
            _ => div_ceil(pc.value - (m - 1), -pc.slope).max(0),
        };
        if t < 0 || t >= len {
            continue;
        }
        let v = pc.value + pc.slope * t;
        if v < 1 || v >= m {
            continue;
        }
        let x = LatticePoint::new(pc.start + t, pc.y);
        let better = match best {
            None => true,
            Some((bv, bx)) => v > bv || (v == bv && x < bx),
        };
        if better {
            best = Some((v, x));
        }
    }
    best.map(|(v, x)| (x, v as usize))
}
