//! Exact Battleship complexity by minimax over position sets.
//!
//! A position set is a bitmask over the points of `S` in sorted order, so
//! it names the same subset as the sorted coordinate list. Shots are
//! grouped by the set of positions they hit; only shots splitting the
//! current set are tried, in order of increasing miss branch.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::game::{Outcome, PositionSet, ShotRecord};
use crate::point::LatticePoint;
use crate::shape::Shape;
use crate::strategy::{AuditLog, Decision, Strategy, StrategyError};

pub const DEFAULT_MAX_N: usize = 16;
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Largest shape accepted (at most 64).
    pub max_n: usize,
    pub memo: bool,
    /// Cap on memo entries.
    pub max_states: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_n: DEFAULT_MAX_N,
            memo: true,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("shape has {n} points, solver limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("memo table exceeded {0} states")]
    MemoryCap(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub exact_entries: usize,
    pub bound_entries: usize,
}

type Mask = u64;

pub struct Solver<'a> {
    shape: &'a Shape,
    config: SolverConfig,
    /// (hit mask, lexicographically smallest shot with that mask), sorted by
    /// shot.
    shots: Vec<(Mask, LatticePoint)>,
    exact: HashMap<Mask, u32>,
    lower: HashMap<Mask, u32>,
    nodes: u64,
}

fn bits(m: Mask) -> u32 {
    m.count_ones()
}

impl<'a> Solver<'a> {
    pub fn new(shape: &'a Shape, config: SolverConfig) -> Result<Self, SolveError> {
        let n = shape.len();
        let limit = config.max_n.min(64);
        if n > limit {
            return Err(SolveError::TooLarge { n, limit });
        }
        let pts = shape.points();
        let mut all: Vec<LatticePoint> = Vec::with_capacity(n * n);
        for &s in pts {
            for &p in pts {
                all.push(s - p);
            }
        }
        all.sort_unstable();
        all.dedup();
        let mut by_mask: HashMap<Mask, LatticePoint> = HashMap::new();
        for x in all {
            let mask = pts
                .iter()
                .enumerate()
                .filter(|&(_, &p)| shape.contains(x + p))
                .fold(0, |m, (i, _)| m | 1 << i);
            by_mask.entry(mask).or_insert(x);
        }
        let mut shots: Vec<_> = by_mask.into_iter().collect();
        shots.sort_unstable_by_key(|&(_, x)| x);
        Ok(Solver {
            shape,
            config,
            shots,
            exact: HashMap::new(),
            lower: HashMap::new(),
            nodes: 0,
        })
    }

    fn full(&self) -> Mask {
        if self.shape.len() == 64 {
            Mask::MAX
        } else {
            (1 << self.shape.len()) - 1
        }
    }

    pub fn stats(&self) -> SolveStats {
        SolveStats {
            nodes: self.nodes,
            exact_entries: self.exact.len(),
            bound_entries: self.lower.len(),
        }
    }

    /// Splitting moves from `p`: (hit branch, miss branch, shot), one per
    /// distinct hit branch, ordered by miss-branch size then shot.
    fn moves(&self, p: Mask) -> Vec<(Mask, Mask, LatticePoint)> {
        let mut seen: HashMap<Mask, LatticePoint> = HashMap::new();
        for &(h, x) in &self.shots {
            let a = p & h;
            if a != 0 && a != p {
                seen.entry(a).or_insert(x);
            }
        }
        let mut out: Vec<_> = seen.into_iter().map(|(a, x)| (a, p & !a, x)).collect();
        out.sort_unstable_by_key(|&(_, m, x)| (bits(m), x));
        out
    }

    fn check_cap(&self) -> Result<(), SolveError> {
        if self.exact.len() + self.lower.len() > self.config.max_states {
            return Err(SolveError::MemoryCap(self.config.max_states));
        }
        Ok(())
    }

    /// Exact value when it is below `beta`; otherwise some value `>= beta`.
    fn value(&mut self, p: Mask, beta: u32) -> Result<u32, SolveError> {
        let size = bits(p);
        if size <= 1 {
            return Ok(0);
        }
        if self.config.memo {
            if let Some(&v) = self.exact.get(&p) {
                return Ok(v);
            }
            if let Some(&lb) = self.lower.get(&p) {
                if lb >= beta {
                    return Ok(lb);
                }
            }
        }
        self.nodes += 1;
        // any splitting shot gives at most |P| - 1; at least one miss is
        // unavoidable once |P| >= 2
        let start = beta.min(size);
        let mut best = start;
        if best > 1 {
            for (a, m, _) in self.moves(p) {
                let miss = self.value(m, best - 1)?;
                if miss + 1 >= best {
                    continue;
                }
                let hit = self.value(a, best)?;
                if hit >= best {
                    continue;
                }
                best = hit.max(miss + 1);
                if best == 1 {
                    break;
                }
            }
        }
        if self.config.memo {
            if best < start {
                self.exact.insert(p, best);
            } else {
                let e = self.lower.entry(p).or_insert(0);
                *e = (*e).max(best);
            }
            self.check_cap()?;
        }
        Ok(best)
    }

    pub fn solve(&mut self) -> Result<u32, SolveError> {
        let full = self.full();
        self.value(full, u32::MAX)
    }

    /// `Some(c)` when `c <= budget`, `None` otherwise.
    pub fn solve_within(&mut self, budget: u32) -> Result<Option<u32>, SolveError> {
        let full = self.full();
        let v = self.value(full, budget.saturating_add(1))?;
        Ok((v <= budget).then_some(v))
    }

    fn mask_of(&self, positions: &PositionSet) -> Mask {
        self.shape
            .points()
            .iter()
            .enumerate()
            .filter(|&(_, &p)| positions.contains(p))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Optimal worst-case misses from an arbitrary position set.
    pub fn solve_positions(&mut self, positions: &PositionSet) -> Result<u32, SolveError> {
        let mask = self.mask_of(positions);
        self.value(mask, u32::MAX)
    }

    /// One optimal tree: at each node the first move in search order that
    /// attains the node's value.
    pub fn extract_tree(&mut self) -> Result<OptimalTree, SolveError> {
        let full = self.full();
        self.tree(full)
    }

    fn tree(&mut self, p: Mask) -> Result<OptimalTree, SolveError> {
        if bits(p) == 1 {
            let i = p.trailing_zeros() as usize;
            return Ok(OptimalTree::Leaf {
                position: self.shape.points()[i],
            });
        }
        let target = self.value(p, u32::MAX)?;
        for (a, m, x) in self.moves(p) {
            let hit = self.value(a, u32::MAX)?;
            let miss = self.value(m, u32::MAX)?;
            if hit.max(miss + 1) == target {
                return Ok(OptimalTree::Node {
                    shot: x,
                    hit: Box::new(self.tree(a)?),
                    miss: Box::new(self.tree(m)?),
                });
            }
        }
        unreachable!("the value is attained by some move")
    }
}

pub fn solve(shape: &Shape) -> Result<u32, SolveError> {
    Solver::new(shape, SolverConfig::default())?.solve()
}

pub fn solve_with(shape: &Shape, config: SolverConfig) -> Result<u32, SolveError> {
    Solver::new(shape, config)?.solve()
}

pub fn extract_tree(shape: &Shape) -> Result<OptimalTree, SolveError> {
    Solver::new(shape, SolverConfig::default())?.extract_tree()
}

/// Every shot `x = s - p` (`s ∈ S`, `p ∈ P`) with `0 < |P ∩ (S - x)| < |P|`,
/// in lexicographic order.
pub fn candidate_shots(positions: &PositionSet, shape: &Shape) -> Vec<LatticePoint> {
    let mut all: Vec<LatticePoint> = Vec::new();
    for p in positions.iter() {
        for &s in shape.points() {
            all.push(s - p);
        }
    }
    all.sort_unstable();
    all.dedup();
    all.retain(|&x| positions.is_splitting(shape, x));
    all
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OptimalTree {
    Leaf {
        position: LatticePoint,
    },
    Node {
        shot: LatticePoint,
        hit: Box<OptimalTree>,
        miss: Box<OptimalTree>,
    },
}

impl OptimalTree {
    pub fn leaves(&self) -> usize {
        match self {
            OptimalTree::Leaf { .. } => 1,
            OptimalTree::Node { hit, miss, .. } => hit.leaves() + miss.leaves(),
        }
    }

    /// Largest number of miss edges on a root-to-leaf path.
    pub fn max_misses(&self) -> u32 {
        match self {
            OptimalTree::Leaf { .. } => 0,
            OptimalTree::Node { hit, miss, .. } => hit.max_misses().max(miss.max_misses() + 1),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain tree")
    }

    /// Graphviz rendering: inner nodes are shots, edges are labelled
    /// hit/miss, leaves carry positions.
    pub fn to_dot(&self) -> String {
        fn walk(t: &OptimalTree, id: &mut usize, out: &mut String) -> usize {
            let me = *id;
            *id += 1;
            match t {
                OptimalTree::Leaf { position } => {
                    let _ = writeln!(out, "  n{} [shape=box, label=\"p = {}\"];", me, position);
                }
                OptimalTree::Node { shot, hit, miss } => {
                    let _ = writeln!(out, "  n{} [shape=ellipse, label=\"{}\"];", me, shot);
                    let h = walk(hit, id, out);
                    let m = walk(miss, id, out);
                    let _ = writeln!(out, "  n{} -> n{} [label=\"hit\"];", me, h);
                    let _ = writeln!(out, "  n{} -> n{} [label=\"miss\", style=dashed];", me, m);
                }
            }
            me
        }
        let mut out = String::from("digraph tree {\n");
        walk(self, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }
}

/// Plays the shots of a decision tree.
#[derive(Debug)]
pub struct TreeStrategy<'t> {
    node: &'t OptimalTree,
    pending: bool,
    audit: AuditLog,
}

impl<'t> TreeStrategy<'t> {
    pub fn new(tree: &'t OptimalTree) -> Self {
        TreeStrategy {
            node: tree,
            pending: false,
            audit: AuditLog::default(),
        }
    }
}

impl Strategy for TreeStrategy<'_> {
    fn name(&self) -> &'static str {
        "optimal"
    }

    fn next_shot(&mut self, _: &Shape, positions: &PositionSet, history: &[ShotRecord]) -> Result<Decision, StrategyError> {
        if self.pending {
            self.pending = false;
            if let (OptimalTree::Node { hit, miss, .. }, Some(last)) = (self.node, history.last()) {
                self.node = match last.outcome {
                    Outcome::Hit => hit,
                    Outcome::Miss => miss,
                };
            }
        }
        match self.node {
            OptimalTree::Leaf { position } => Ok(Decision::Declare(*position)),
            OptimalTree::Node { shot, .. } => {
                self.pending = true;
                if positions.len() < 2 {
                    return Err(StrategyError::NoSplittingShot(positions.len()));
                }
                Ok(Decision::Shoot(*shot))
            }
        }
    }

    fn audit(&self) -> &AuditLog {
        &self.audit
    }
}
