//! Width shooting for digital convex sets.
//!
//! While the hull of the candidate set holds at least 25 lattice points,
//! take the direction `u` of the `w(P) + 1` lines covering `P` and shoot
//! `u, 2u, ...` to the first miss, then `-u, -2u, ...` to the first miss.
//! Afterwards each line parallel to `u` meets the candidate hull in at most
//! one lattice point. Below the threshold the greedy strategy finishes.

use std::collections::HashSet;

use super::basic::Greedy;
use super::{AuditCheck, AuditLog, Decision, ShotMemory, Strategy, StrategyError};
use crate::game::{Outcome, PositionSet, ShotRecord};
use crate::lattice::{count_lattice_points, lattice_points_in_convex, width_of_hull};
use crate::point::{Direction, LatticePoint};
use crate::shape::Shape;

pub const HULL_THRESHOLD: u64 = 25;

/// Smallest `k` with `n^((3/4)^k) < 25`.
pub fn width_iteration_bound(n: usize) -> u32 {
    if (n as u64) < HULL_THRESHOLD {
        return 0;
    }
    let ln_n = (n as f64).ln();
    let ln_t = (HULL_THRESHOLD as f64).ln();
    let mut k = 1;
    while 0.75f64.powi(k as i32) * ln_n >= ln_t {
        k += 1;
    }
    k
}

/// `2 k* + 24`.
pub fn width_miss_bound(n: usize) -> u32 {
    2 * width_iteration_bound(n) + 24
}

#[derive(Debug, Clone, Copy)]
struct Scan {
    u: LatticePoint,
    k: i64,
    width: u64,
    misses_before: usize,
    fired: bool,
}

#[derive(Debug)]
enum Phase {
    Idle,
    Scan(Scan),
    Fallback(Greedy),
}

#[derive(Debug)]
pub struct WidthShooting {
    phase: Phase,
    directions: Vec<Direction>,
    pending: Option<LatticePoint>,
    memory: ShotMemory,
    audit: AuditLog,
}

impl Default for WidthShooting {
    fn default() -> Self {
        WidthShooting {
            phase: Phase::Idle,
            directions: Vec::new(),
            pending: None,
            memory: ShotMemory::default(),
            audit: AuditLog::default(),
        }
    }
}

fn hull_count(positions: &PositionSet) -> u64 {
    count_lattice_points(&positions.hull()).expect("hulls are convex").total
}

impl WidthShooting {
    pub fn new() -> Self {
        Self::default()
    }

    /// Scan direction of each iteration started so far.
    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn iterations(&self) -> u32 {
        self.audit.iterations
    }

    fn advance(&mut self, outcome: Outcome, positions: &PositionSet) -> Result<(), StrategyError> {
        let Phase::Scan(mut sc) = self.phase else {
            return Ok(());
        };
        match (outcome, sc.k > 0) {
            (Outcome::Hit, true) => sc.k += 1,
            (Outcome::Hit, false) => sc.k -= 1,
            (Outcome::Miss, true) => sc.k = -1,
            (Outcome::Miss, false) => {
                if !sc.fired {
                    return Err(StrategyError::Stalled);
                }
                self.finish_iteration(&sc, positions);
                self.phase = Phase::Idle;
                return Ok(());
            }
        }
        self.phase = Phase::Scan(sc);
        Ok(())
    }

    fn finish_iteration(&mut self, sc: &Scan, positions: &PositionSet) {
        let misses = self.memory.misses() - sc.misses_before;
        self.audit.record(AuditCheck::IterationMisses, misses <= 2, || {
            format!("iteration along {} cost {} misses", sc.u, misses)
        });
        let hull = positions.hull();
        let count = count_lattice_points(&hull).expect("hulls are convex").total;
        self.audit.record(AuditCheck::HullCount, count <= sc.width + 1, || {
            format!("hull holds {} lattice points after scanning along {}, width was {}", count, sc.u, sc.width)
        });
        let distinct = if count <= sc.width + 1 {
            let pts = lattice_points_in_convex(&hull);
            let keys: HashSet<i64> = pts.iter().map(|&p| sc.u.cross(p)).collect();
            keys.len() == pts.len()
        } else {
            false
        };
        self.audit.record(AuditCheck::OnePointPerLine, distinct, || {
            format!("two hull lattice points share a line parallel to {}", sc.u)
        });
    }

    fn decide(&mut self, shape: &Shape, positions: &PositionSet, history: &[ShotRecord]) -> Result<LatticePoint, StrategyError> {
        loop {
            match &mut self.phase {
                Phase::Fallback(g) => {
                    return match g.next_shot(shape, positions, history)? {
                        Decision::Shoot(x) => Ok(x),
                        Decision::Declare(_) => Err(StrategyError::NoSplittingShot(positions.len())),
                    };
                }
                Phase::Idle => {
                    if hull_count(positions) < HULL_THRESHOLD {
                        self.phase = Phase::Fallback(Greedy::new());
                        continue;
                    }
                    let cert = width_of_hull(&positions.hull());
                    self.directions.push(cert.line_direction);
                    self.audit.iterations += 1;
                    self.phase = Phase::Scan(Scan {
                        u: cert.line_direction.as_point(),
                        k: 1,
                        width: cert.width,
                        misses_before: self.memory.misses(),
                        fired: false,
                    });
                }
                Phase::Scan(sc) => {
                    let x = sc.u * sc.k;
                    if self.memory.outcome(x).is_none() {
                        sc.fired = true;
                        return Ok(x);
                    }
                    let outcome = self.memory.outcome(x).expect("checked");
                    self.advance(outcome, positions)?;
                }
            }
        }
    }
}

impl Strategy for WidthShooting {
    fn name(&self) -> &'static str {
        "width"
    }

    fn next_shot(&mut self, shape: &Shape, positions: &PositionSet, history: &[ShotRecord]) -> Result<Decision, StrategyError> {
        self.memory.sync(history);
        if let Some(x) = self.pending.take() {
            let outcome = self.memory.outcome(x).expect("pending shot is in the log");
            self.advance(outcome, positions)?;
        }
        if let Some(p) = positions.single() {
            return Ok(Decision::Declare(p));
        }
        let x = self.decide(shape, positions, history)?;
        if matches!(self.phase, Phase::Scan(_)) {
            self.pending = Some(x);
        }
        Ok(Decision::Shoot(x))
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}
