use super::profile::{first_splitting_shot, max_hit_splitting_shot};
use super::{AuditLog, Decision, ShotMemory, Strategy, StrategyError};
use crate::game::{Outcome, PositionSet, ShotRecord};
use crate::point::LatticePoint;
use crate::shape::Shape;

fn declare(positions: &PositionSet) -> Option<Decision> {
    positions.single().map(Decision::Declare)
}

/// Lexicographically smallest splitting shot. Every miss removes at least
/// one position, so at most `n - 1` misses.
#[derive(Debug, Default)]
pub struct Elimination {
    audit: AuditLog,
}

impl Elimination {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for Elimination {
    fn name(&self) -> &'static str {
        "elimination"
    }

    fn next_shot(&mut self, shape: &Shape, positions: &PositionSet, _: &[ShotRecord]) -> Result<Decision, StrategyError> {
        if let Some(d) = declare(positions) {
            return Ok(d);
        }
        first_splitting_shot(positions, shape)
            .map(Decision::Shoot)
            .ok_or(StrategyError::NoSplittingShot(positions.len()))
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}

/// Splitting shot with the smallest miss branch, ties to the
/// lexicographically smallest shot.
#[derive(Debug, Default)]
pub struct Greedy {
    audit: AuditLog,
}

impl Greedy {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for Greedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn next_shot(&mut self, shape: &Shape, positions: &PositionSet, _: &[ShotRecord]) -> Result<Decision, StrategyError> {
        if let Some(d) = declare(positions) {
            return Ok(d);
        }
        max_hit_splitting_shot(positions, shape)
            .map(|(x, _)| Decision::Shoot(x))
            .ok_or(StrategyError::NoSplittingShot(positions.len()))
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}

/// Shoots `(1, 0), (2, 0), ...` until the first miss, or until the next
/// shot could only miss, then finishes by elimination.
#[derive(Debug)]
pub struct RightScan {
    next: i64,
    scanning: bool,
    memory: ShotMemory,
    audit: AuditLog,
}

impl Default for RightScan {
    fn default() -> Self {
        RightScan {
            next: 1,
            scanning: true,
            memory: ShotMemory::default(),
            audit: AuditLog::default(),
        }
    }
}

impl RightScan {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Strategy for RightScan {
    fn name(&self) -> &'static str {
        "scan"
    }

    fn next_shot(&mut self, shape: &Shape, positions: &PositionSet, history: &[ShotRecord]) -> Result<Decision, StrategyError> {
        if self.memory.sync(history).iter().any(|r| r.outcome == Outcome::Miss) {
            self.scanning = false;
        }
        if let Some(d) = declare(positions) {
            return Ok(d);
        }
        if self.scanning {
            let x = LatticePoint::new(self.next, 0);
            if positions.hit_count(shape, x) > 0 {
                self.next += 1;
                return Ok(Decision::Shoot(x));
            }
            self.scanning = false;
        }
        first_splitting_shot(positions, shape)
            .map(Decision::Shoot)
            .ok_or(StrategyError::NoSplittingShot(positions.len()))
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}
