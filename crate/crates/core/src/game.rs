//! Game semantics.
//!
//! The ship occupies `S - p` for an unknown position `p ∈ S`; the opening
//! hit at the origin is implicit and not recorded. A shot `x` hits iff
//! `x + p ∈ S`. The set of positions consistent with all outcomes starts
//! as `S` and is refined by
//!
//! * hit at `x`:  `P ← P ∩ (S - x)`
//! * miss at `x`: `P ← P \ (S - x)`
//!
//! until a single position remains.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lattice::convex_hull_of;
use crate::point::LatticePoint;
use crate::rows::RowSet;
use crate::shape::Shape;
use crate::strategy::{Decision, Strategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Hit,
    Miss,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("hidden position {0} is not a point of the shape")]
    HiddenNotInShape(LatticePoint),
    #[error("outcome {outcome:?} at {shot} leaves no consistent position")]
    Inconsistent { shot: LatticePoint, outcome: Outcome },
    #[error("need at least two positions, have {0}")]
    TooFewPositions(usize),
    #[error("need exactly two positions, have {0}")]
    NotAPair(usize),
    #[error("shot {0} was already fired")]
    RepeatedShot(LatticePoint),
    #[error("position set unchanged for {0} consecutive shots")]
    Livelock(usize),
    #[error("strategy exceeded {0} shots")]
    Runaway(usize),
    #[error("declared {declared} while {remaining} positions remain")]
    WrongDeclaration { declared: LatticePoint, remaining: usize },
    #[error("hidden position dropped from the position set after shot {0}")]
    Unsound(LatticePoint),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// The opponent: answers shots against a fixed hidden position.
#[derive(Debug, Clone, Copy)]
pub struct Oracle<'a> {
    shape: &'a Shape,
    hidden: LatticePoint,
}

impl<'a> Oracle<'a> {
    pub fn new(shape: &'a Shape, hidden: LatticePoint) -> Result<Self, GameError> {
        if !shape.contains(hidden) {
            return Err(GameError::HiddenNotInShape(hidden));
        }
        Ok(Oracle { shape, hidden })
    }

    pub fn hidden(&self) -> LatticePoint {
        self.hidden
    }

    pub fn answer(&self, shot: LatticePoint) -> Outcome {
        if self.shape.contains(shot + self.hidden) {
            Outcome::Hit
        } else {
            Outcome::Miss
        }
    }
}

/// Positions still consistent with every outcome so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionSet {
    rows: RowSet,
}

impl PositionSet {
    /// The root set `P = S`.
    pub fn full(shape: &Shape) -> Self {
        PositionSet {
            rows: shape.rows().clone(),
        }
    }

    pub fn from_points<I: IntoIterator<Item = LatticePoint>>(points: I) -> Self {
        PositionSet {
            rows: RowSet::from_points(points),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        self.rows.contains(p)
    }

    /// Row-major iteration (`y`, then `x`).
    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.rows.iter()
    }

    /// Members in lexicographic order.
    pub fn points(&self) -> Vec<LatticePoint> {
        let mut v: Vec<_> = self.rows.iter().collect();
        v.sort_unstable();
        v
    }

    pub fn single(&self) -> Option<LatticePoint> {
        (self.len() == 1).then(|| self.rows.iter().next().expect("one member"))
    }

    pub fn rows(&self) -> &RowSet {
        &self.rows
    }

    /// CCW hull vertices of the member set.
    pub fn hull(&self) -> Vec<LatticePoint> {
        convex_hull_of(&self.rows.run_endpoints())
    }

    /// `|P ∩ (S - x)|`: members that would report a hit at `shot`.
    pub fn hit_count(&self, shape: &Shape, shot: LatticePoint) -> usize {
        self.rows.count_shifted(shape.rows(), shot)
    }

    pub fn is_splitting(&self, shape: &Shape, shot: LatticePoint) -> bool {
        let hits = self.hit_count(shape, shot);
        hits > 0 && hits < self.len()
    }

    fn refine(&self, shape: &Shape, shot: LatticePoint, outcome: Outcome) -> PositionSet {
        let rows = match outcome {
            Outcome::Hit => self.rows.intersect_shifted(shape.rows(), shot),
            Outcome::Miss => self.rows.subtract_shifted(shape.rows(), shot),
        };
        PositionSet { rows }
    }
}

/// Applies one shot outcome. An empty result means the outcome sequence
/// cannot come from any position, which an honest oracle never produces.
pub fn update(
    positions: &PositionSet,
    shape: &Shape,
    shot: LatticePoint,
    outcome: Outcome,
) -> Result<PositionSet, GameError> {
    let next = positions.refine(shape, shot, outcome);
    if next.is_empty() {
        return Err(GameError::Inconsistent { shot, outcome });
    }
    Ok(next)
}

/// Positions of `shape` consistent with every recorded outcome, computed
/// from scratch by querying an oracle per candidate position.
pub fn consistent_positions(shape: &Shape, shots: &[ShotRecord]) -> PositionSet {
    PositionSet::from_points(shape.points().iter().copied().filter(|&p| {
        let oracle = Oracle { shape, hidden: p };
        shots.iter().all(|r| oracle.answer(r.shot) == r.outcome)
    }))
}

/// A shot separating the first two members (in lexicographic order):
/// hits the first, misses the second. Such a shot splits `P`.
pub fn splitting_shot(positions: &PositionSet, shape: &Shape) -> Result<LatticePoint, GameError> {
    if positions.len() < 2 {
        return Err(GameError::TooFewPositions(positions.len()));
    }
    let pts = positions.points();
    Ok(separating_shot(shape, pts[0], pts[1]))
}

/// For `|P| = 2`: a shot hitting exactly one of the two positions.
pub fn distinguish_pair(positions: &PositionSet, shape: &Shape) -> Result<LatticePoint, GameError> {
    if positions.len() != 2 {
        return Err(GameError::NotAPair(positions.len()));
    }
    let pts = positions.points();
    Ok(separating_shot(shape, pts[0], pts[1]))
}

/// First `x = s - p1` (over sorted `s ∈ S`) with `x + p2 ∉ S`. Exists since
/// distinct translates of a finite set differ.
fn separating_shot(shape: &Shape, p1: LatticePoint, p2: LatticePoint) -> LatticePoint {
    shape
        .points()
        .iter()
        .map(|&s| s - p1)
        .find(|&x| !shape.contains(x + p2))
        .expect("distinct translates of a finite set differ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub shot: LatticePoint,
    pub outcome: Outcome,
    /// `|P|` after applying this outcome.
    pub remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GameTrace {
    pub shots: Vec<ShotRecord>,
    pub miss_count: u32,
    pub declared_position: Option<LatticePoint>,
}

#[derive(Serialize)]
struct TraceLine {
    x: i64,
    y: i64,
    outcome: Outcome,
    remaining: usize,
}

impl GameTrace {
    pub fn shot_count(&self) -> usize {
        self.shots.len()
    }

    /// One JSON object per line: `{"x","y","outcome","remaining"}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.shots {
            let line = TraceLine {
                x: r.shot.x,
                y: r.shot.y,
                outcome: r.outcome,
                remaining: r.remaining,
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&line).expect("plain struct"));
        }
        out
    }
}

/// Plays one game of `strategy` against the position `hidden`.
///
/// Guards: a repeated shot is rejected; more than `4 (n + perimeter)`
/// consecutive shots that leave `P` unchanged is a livelock; more than
/// `n (max extent + 2) + 64` shots in total is a runaway.
pub fn run_game(
    shape: &Shape,
    strategy: &mut dyn Strategy,
    hidden: LatticePoint,
) -> Result<GameTrace, GameError> {
    let oracle = Oracle::new(shape, hidden)?;
    let n = shape.len();
    let (ex, ey) = shape.extents();
    let livelock_limit = 4 * (n + shape.perimeter());
    let runaway_limit = n * (ex.max(ey) as usize + 2) + 64;
    let cross_check = cfg!(debug_assertions) && n <= 256;

    let mut positions = PositionSet::full(shape);
    let mut trace = GameTrace::default();
    let mut fired: HashSet<LatticePoint> = HashSet::new();
    let mut unchanged = 0usize;

    while positions.len() > 1 {
        match strategy.next_shot(shape, &positions, &trace.shots)? {
            Decision::Declare(p) => {
                return Err(GameError::WrongDeclaration {
                    declared: p,
                    remaining: positions.len(),
                });
            }
            Decision::Shoot(shot) => {
                if !fired.insert(shot) {
                    return Err(GameError::RepeatedShot(shot));
                }
                let outcome = oracle.answer(shot);
                let next = update(&positions, shape, shot, outcome)?;
                if !next.contains(hidden) {
                    return Err(GameError::Unsound(shot));
                }
                if next.len() == positions.len() {
                    unchanged += 1;
                    if unchanged > livelock_limit {
                        return Err(GameError::Livelock(unchanged));
                    }
                } else {
                    unchanged = 0;
                }
                positions = next;
                if outcome == Outcome::Miss {
                    trace.miss_count += 1;
                }
                trace.shots.push(ShotRecord {
                    shot,
                    outcome,
                    remaining: positions.len(),
                });
                if cross_check {
                    debug_assert_eq!(positions, consistent_positions(shape, &trace.shots));
                }
                if trace.shots.len() > runaway_limit {
                    return Err(GameError::Runaway(trace.shots.len()));
                }
            }
        }
    }
    trace.declared_position = positions.single();
    Ok(trace)
}
