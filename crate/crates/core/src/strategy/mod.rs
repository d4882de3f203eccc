//! Shot-selection policies.
//!
//! A strategy is a per-game state machine: the engine hands it the current
//! position set and the shot log, and it answers with the next shot (or a
//! declaration once one position remains). Strategies never repeat a shot;
//! where an algorithm calls for a shot fired earlier, the recorded outcome
//! is reused.

mod basic;
pub mod profile;
mod staircase;
mod width;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::game::{Outcome, PositionSet, ShotRecord};
use crate::lattice::{is_digital_convex, is_hv_convex, is_polyomino};
use crate::point::LatticePoint;
use crate::shape::Shape;

pub use basic::{Elimination, Greedy, RightScan};
pub use staircase::{staircase_miss_bound, Staircase};
pub use width::{width_iteration_bound, width_miss_bound, WidthShooting, HULL_THRESHOLD};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Shoot(LatticePoint),
    Declare(LatticePoint),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("strategy `{strategy}` does not apply to this shape: {reason}")]
    NotApplicable { strategy: &'static str, reason: &'static str },
    #[error("no splitting shot for {0} positions")]
    NoSplittingShot(usize),
    #[error("width iteration fired no new shot")]
    Stalled,
    #[error("unknown strategy `{0}`")]
    Unknown(String),
}

pub trait Strategy {
    fn name(&self) -> &'static str;

    fn next_shot(
        &mut self,
        shape: &Shape,
        positions: &PositionSet,
        history: &[ShotRecord],
    ) -> Result<Decision, StrategyError>;

    /// Runtime checks of the algorithm's correctness claims.
    fn audit(&self) -> &AuditLog;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditCheck {
    /// Every candidate but the topmost hits one of the two staircase steps.
    TopmostDoubleMiss,
    /// A miss on the preferred step, alone or followed by a hit, leaves at
    /// most two thirds of the candidates.
    TwoThirds,
    /// Candidate x-coordinates after the horizontal scans are monotone in y,
    /// one per row.
    MonotoneCandidates,
    /// After a width iteration no two hull lattice points share a line
    /// parallel to the scan direction.
    OnePointPerLine,
    /// After a width iteration the hull holds at most `w + 1` lattice points.
    HullCount,
    /// A width iteration costs at most two misses.
    IterationMisses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditViolation {
    pub check: AuditCheck,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditLog {
    pub checks: BTreeMap<AuditCheck, u64>,
    pub violations: Vec<AuditViolation>,
    /// Width iterations started.
    pub iterations: u32,
}

impl AuditLog {
    pub(crate) fn record(&mut self, check: AuditCheck, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(check).or_default() += 1;
        if !ok {
            self.violations.push(AuditViolation { check, detail: detail() });
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn checked(&self, check: AuditCheck) -> u64 {
        self.checks.get(&check).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &AuditLog) {
        for (&k, &v) in &other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations.iter().cloned());
        self.iterations = self.iterations.max(other.iterations);
    }
}

/// Outcomes of shots already fired, synced incrementally from the log.
#[derive(Debug, Clone, Default)]
pub(crate) struct ShotMemory {
    seen: usize,
    outcomes: HashMap<LatticePoint, Outcome>,
}

impl ShotMemory {
    /// Absorbs records added since the last call and returns them.
    pub(crate) fn sync<'h>(&mut self, history: &'h [ShotRecord]) -> &'h [ShotRecord] {
        let fresh = &history[self.seen.min(history.len())..];
        for r in fresh {
            self.outcomes.insert(r.shot, r.outcome);
        }
        self.seen = history.len();
        fresh
    }

    pub(crate) fn outcome(&self, shot: LatticePoint) -> Option<Outcome> {
        self.outcomes.get(&shot).copied()
    }

    pub(crate) fn misses(&self) -> usize {
        self.outcomes.values().filter(|&&o| o == Outcome::Miss).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyKind {
    Elimination,
    Greedy,
    Staircase,
    Width,
    Scan,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 5] = [
        StrategyKind::Elimination,
        StrategyKind::Greedy,
        StrategyKind::Staircase,
        StrategyKind::Width,
        StrategyKind::Scan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Elimination => "elimination",
            StrategyKind::Greedy => "greedy",
            StrategyKind::Staircase => "staircase",
            StrategyKind::Width => "width",
            StrategyKind::Scan => "scan",
        }
    }

    pub fn applicable(self, shape: &Shape) -> bool {
        self.check(shape).is_ok()
    }

    pub fn check(self, shape: &Shape) -> Result<(), StrategyError> {
        let reason = match self {
            StrategyKind::Staircase if !is_polyomino(shape) => "not a polyomino",
            StrategyKind::Staircase if !is_hv_convex(shape) => "not HV-convex",
            StrategyKind::Width if !is_digital_convex(shape) => "not digital convex",
            _ => return Ok(()),
        };
        Err(StrategyError::NotApplicable {
            strategy: self.name(),
            reason,
        })
    }

    /// A fresh single-game instance, after checking applicability.
    pub fn instantiate(self, shape: &Shape) -> Result<Box<dyn Strategy + Send>, StrategyError> {
        self.check(shape)?;
        Ok(self.fresh())
    }

    /// A fresh single-game instance without the applicability check, for
    /// callers that checked the shape once up front.
    pub fn fresh(self) -> Box<dyn Strategy + Send> {
        match self {
            StrategyKind::Elimination => Box::new(Elimination::new()),
            StrategyKind::Greedy => Box::new(Greedy::new()),
            StrategyKind::Staircase => Box::new(Staircase::new()),
            StrategyKind::Width => Box::new(WidthShooting::new()),
            StrategyKind::Scan => Box::new(RightScan::new()),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StrategyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| StrategyError::Unknown(s.to_string()))
    }
}
