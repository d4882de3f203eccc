//! Staircase shooting for HV-convex polyominoes.
//!
//! Phase 1 shoots `(1,0), (2,0), ...` to the first miss `k+`, then
//! `(-1,0), (-2,0), ...` to the first miss `k-`. The hidden row has length
//! `k+ - k- - 1`, and the surviving positions (one per row of that length)
//! have x-coordinates monotone in y. Phase 2 grows a monotone path of hits
//! from `(k+ - 1, 0)` by steps `(1,0)` / `(0,1)` (mirrored to `(-1,0)` and a
//! start of `(k- + 1, 0)` for a decreasing sequence), always trying the
//! step that more candidates would hit first.

use super::profile::first_splitting_shot;
use super::{AuditCheck, AuditLog, Decision, ShotMemory, Strategy, StrategyError};
use crate::game::{distinguish_pair, Outcome, PositionSet, ShotRecord};
use crate::point::LatticePoint;
use crate::shape::Shape;

/// `⌈log_{3/2}(n/3)⌉ + 4`, evaluated exactly as `k + 4` for the smallest
/// integer `k` with `(2/3)^k n <= 3`.
pub fn staircase_miss_bound(n: usize) -> i64 {
    let n = n.max(1) as u128;
    let holds = |k: i64| -> bool {
        if k >= 0 {
            n * 2u128.pow(k as u32) <= 3 * 3u128.pow(k as u32)
        } else {
            let j = (-k) as u32;
            n * 3u128.pow(j) <= 3 * 2u128.pow(j)
        }
    };
    let mut k = -40;
    while !holds(k) {
        k += 1;
    }
    k + 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    UpRight,
    UpLeft,
}

impl Orientation {
    fn horizontal(self) -> LatticePoint {
        match self {
            Orientation::UpRight => LatticePoint::new(1, 0),
            Orientation::UpLeft => LatticePoint::new(-1, 0),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Step {
    first: LatticePoint,
    second: LatticePoint,
    first_missed: bool,
    before: usize,
    topmost: LatticePoint,
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    ScanRight { k: i64 },
    ScanLeft { k: i64 },
    Path { step: Option<Step> },
    Finish,
}

#[derive(Debug)]
pub struct Staircase {
    phase: Phase,
    k_plus: Option<i64>,
    k_minus: Option<i64>,
    orientation: Option<Orientation>,
    path: Vec<LatticePoint>,
    pending: Option<LatticePoint>,
    memory: ShotMemory,
    audit: AuditLog,
}

impl Default for Staircase {
    fn default() -> Self {
        Staircase {
            phase: Phase::ScanRight { k: 1 },
            k_plus: None,
            k_minus: None,
            orientation: None,
            path: Vec::new(),
            pending: None,
            memory: ShotMemory::default(),
            audit: AuditLog::default(),
        }
    }
}

impl Staircase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn k_plus(&self) -> Option<i64> {
        self.k_plus
    }

    pub fn k_minus(&self) -> Option<i64> {
        self.k_minus
    }

    /// `k+ - k- - 1`, once both scans have ended.
    pub fn row_length(&self) -> Option<i64> {
        Some(self.k_plus? - self.k_minus? - 1)
    }

    pub fn orientation(&self) -> Option<Orientation> {
        self.orientation
    }

    /// Hits of phase 2, starting with the last horizontal hit.
    pub fn path(&self) -> &[LatticePoint] {
        &self.path
    }

    fn decide(&mut self, shape: &Shape, positions: &PositionSet) -> Result<LatticePoint, StrategyError> {
        match self.phase {
            Phase::ScanRight { k } | Phase::ScanLeft { k } => Ok(LatticePoint::new(k, 0)),
            Phase::Path { step: Some(st) } => Ok(if st.first_missed { st.second } else { st.first }),
            Phase::Path { step: None } => {
                let orientation = self.orientation.expect("set with the path");
                let s = *self.path.last().expect("path starts non-empty");
                let h = s + orientation.horizontal();
                let v = s + LatticePoint::new(0, 1);
                let pts = positions.points();
                let topmost = *pts.iter().max_by_key(|p| (p.y, p.x)).expect("non-empty");
                let bad = pts
                    .iter()
                    .filter(|&&p| p != topmost)
                    .find(|&&p| !shape.contains(p + h) && !shape.contains(p + v));
                self.audit.record(AuditCheck::TopmostDoubleMiss, bad.is_none(), || {
                    format!("candidate {} misses both {} and {}", bad.unwrap(), h, v)
                });
                let (first, second) = if positions.hit_count(shape, h) >= positions.hit_count(shape, v) {
                    (h, v)
                } else {
                    (v, h)
                };
                self.phase = Phase::Path {
                    step: Some(Step {
                        first,
                        second,
                        first_missed: false,
                        before: positions.len(),
                        topmost,
                    }),
                };
                Ok(first)
            }
            Phase::Finish => {
                if positions.len() == 2 {
                    distinguish_pair(positions, shape).map_err(|_| StrategyError::NoSplittingShot(2))
                } else {
                    first_splitting_shot(positions, shape).ok_or(StrategyError::NoSplittingShot(positions.len()))
                }
            }
        }
    }

    fn advance(&mut self, outcome: Outcome, positions: &PositionSet) {
        let hit = outcome == Outcome::Hit;
        match self.phase {
            Phase::ScanRight { k } if hit => self.phase = Phase::ScanRight { k: k + 1 },
            Phase::ScanRight { k } => {
                self.k_plus = Some(k);
                self.phase = Phase::ScanLeft { k: -1 };
            }
            Phase::ScanLeft { k } if hit => self.phase = Phase::ScanLeft { k: k - 1 },
            Phase::ScanLeft { k } => {
                self.k_minus = Some(k);
                self.start_path(positions);
            }
            Phase::Path { step: Some(mut st) } => {
                if hit {
                    let x = if st.first_missed { st.second } else { st.first };
                    if st.first_missed && st.before >= 3 {
                        let after = positions.len();
                        self.audit.record(AuditCheck::TwoThirds, 3 * after <= 2 * st.before, || {
                            format!("{} of {} candidates survive a miss then a hit", after, st.before)
                        });
                    }
                    self.path.push(x);
                    self.phase = Phase::Path { step: None };
                } else if !st.first_missed {
                    if st.before >= 3 {
                        let after = positions.len();
                        self.audit.record(AuditCheck::TwoThirds, 3 * after <= 2 * st.before, || {
                            format!("{} of {} candidates survive a miss", after, st.before)
                        });
                    }
                    st.first_missed = true;
                    self.phase = Phase::Path { step: Some(st) };
                } else {
                    let ok = positions.single() == Some(st.topmost);
                    self.audit.record(AuditCheck::TopmostDoubleMiss, ok, || {
                        format!("double miss leaves {} positions, expected only {}", positions.len(), st.topmost)
                    });
                    self.phase = Phase::Finish;
                }
            }
            Phase::Path { step: None } | Phase::Finish => {}
        }
    }

    fn start_path(&mut self, positions: &PositionSet) {
        let (k_plus, k_minus) = (self.k_plus.expect("right scan ended"), self.k_minus.expect("left scan ended"));
        let mut pts = positions.points();
        pts.sort_by_key(|p| (p.y, p.x));
        let one_per_row = pts.windows(2).all(|w| w[0].y < w[1].y);
        let increasing = pts.windows(2).all(|w| w[0].x <= w[1].x);
        let decreasing = pts.windows(2).all(|w| w[0].x >= w[1].x);
        let ok = one_per_row && (increasing || decreasing);
        self.audit.record(AuditCheck::MonotoneCandidates, ok, || {
            format!("candidates {:?} are not one per row with monotone x", pts)
        });
        if !ok {
            self.phase = Phase::Finish;
            return;
        }
        let (orientation, start) = if increasing {
            (Orientation::UpRight, LatticePoint::new(k_plus - 1, 0))
        } else {
            (Orientation::UpLeft, LatticePoint::new(k_minus + 1, 0))
        };
        self.orientation = Some(orientation);
        self.path = vec![start];
        self.phase = Phase::Path { step: None };
    }
}

impl Strategy for Staircase {
    fn name(&self) -> &'static str {
        "staircase"
    }

    fn next_shot(&mut self, shape: &Shape, positions: &PositionSet, history: &[ShotRecord]) -> Result<Decision, StrategyError> {
        self.memory.sync(history);
        if let Some(x) = self.pending.take() {
            let outcome = self.memory.outcome(x).expect("pending shot is in the log");
            self.advance(outcome, positions);
        }
        loop {
            if let Some(p) = positions.single() {
                return Ok(Decision::Declare(p));
            }
            if positions.len() == 2 {
                self.phase = Phase::Finish;
            }
            let x = self.decide(shape, positions)?;
            if let Some(outcome) = self.memory.outcome(x) {
                self.advance(outcome, positions);
                continue;
            }
            self.pending = Some(x);
            return Ok(Decision::Shoot(x));
        }
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}
