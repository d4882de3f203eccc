//! Batch evaluation: per-position simulation with bound audits, inequality
//! sweeps over digital convex corpora, and exact complexities of small
//! digital convex sets.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::game::{run_game, GameError};
use crate::gen::Rng;
use crate::io::content_hash;
use crate::lattice::{
    blaschke_witness, convex_hull, convex_hull_of, count_lattice_points, is_digital_convex, is_hv_convex,
    is_parallelogram_free, is_polyomino, lattice_diameter, lattice_width,
};
use crate::point::LatticePoint;
use crate::shape::Shape;
use crate::solver::{SolveError, Solver, SolverConfig};
use crate::strategy::{
    staircase_miss_bound, width_iteration_bound, width_miss_bound, AuditLog, StrategyError, StrategyKind,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("strategy `{strategy}` failed at position {position}: {source}")]
    Game {
        strategy: &'static str,
        position: LatticePoint,
        source: GameError,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("shape `{0}` is not digital convex")]
    NotDigitalConvex(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub polyomino: bool,
    pub hv_convex: bool,
    pub digital_convex: bool,
    pub parallelogram_free: bool,
    pub diameter: u64,
    pub width: u64,
}

pub fn classify(shape: &Shape) -> Classification {
    Classification {
        n: shape.len(),
        polyomino: is_polyomino(shape),
        hv_convex: is_hv_convex(shape),
        digital_convex: is_digital_convex(shape),
        parallelogram_free: is_parallelogram_free(shape),
        diameter: lattice_diameter(shape),
        width: lattice_width(shape).width,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvalConfig {
    /// Simulate every position up to this many points.
    pub subsample_threshold: usize,
    /// Random positions simulated above the threshold, besides the hull
    /// vertices.
    pub sample_size: usize,
    pub seed: u64,
    pub compute_optimal: bool,
    pub solver: SolverConfig,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            subsample_threshold: 5000,
            sample_size: 512,
            seed: 0,
            compute_optimal: false,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyResult {
    pub strategy: StrategyKind,
    pub max_misses: u32,
    pub mean_misses: f64,
    pub max_shots: usize,
    /// Largest number of width iterations in one game (width strategy only).
    pub max_iterations: Option<u32>,
    pub audit: AuditLog,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub bound: i64,
    pub observed: i64,
    pub pass: bool,
}

impl BoundCheck {
    fn at_most(name: impl Into<String>, observed: i64, bound: i64) -> Self {
        BoundCheck {
            name: name.into(),
            bound,
            observed,
            pass: observed <= bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub id: String,
    pub sha256: String,
    pub class: Classification,
    pub subsampled: bool,
    pub positions: usize,
    pub strategies: Vec<StrategyResult>,
    pub optimal: Option<u32>,
    pub checks: Vec<BoundCheck>,
}

impl EvalReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn result(&self, kind: StrategyKind) -> Option<&StrategyResult> {
        self.strategies.iter().find(|r| r.strategy == kind)
    }
}

/// Every position when `n` is at most the threshold, otherwise a seeded
/// sample plus every hull vertex, in lexicographic order.
pub fn positions_to_simulate(shape: &Shape, config: &EvalConfig) -> (Vec<LatticePoint>, bool) {
    let pts = shape.points();
    if pts.len() <= config.subsample_threshold {
        return (pts.to_vec(), false);
    }
    let mut rng = Rng::new(config.seed);
    let mut chosen: BTreeSet<LatticePoint> = convex_hull(shape).into_iter().collect();
    let mut picked: HashSet<usize> = HashSet::new();
    while picked.len() < config.sample_size.min(pts.len()) {
        let i = rng.below(pts.len() as u64) as usize;
        if picked.insert(i) {
            chosen.insert(pts[i]);
        }
    }
    (chosen.into_iter().collect(), true)
}

struct GameSummary {
    misses: u32,
    shots: usize,
    iterations: u32,
    audit: AuditLog,
}

fn simulate(shape: &Shape, kind: StrategyKind, positions: &[LatticePoint]) -> Result<StrategyResult, EvalError> {
    kind.check(shape)?;
    let games: Vec<GameSummary> = positions
        .par_iter()
        .map(|&p| {
            let mut strategy = kind.fresh();
            let trace = run_game(shape, strategy.as_mut(), p).map_err(|source| EvalError::Game {
                strategy: kind.name(),
                position: p,
                source,
            })?;
            let audit = strategy.audit().clone();
            Ok(GameSummary {
                misses: trace.miss_count,
                shots: trace.shots.len(),
                iterations: audit.iterations,
                audit,
            })
        })
        .collect::<Result<_, EvalError>>()?;
    let mut audit = AuditLog::default();
    for g in &games {
        audit.merge(&g.audit);
    }
    let total: u64 = games.iter().map(|g| g.misses as u64).sum();
    Ok(StrategyResult {
        strategy: kind,
        max_misses: games.iter().map(|g| g.misses).max().unwrap_or(0),
        mean_misses: total as f64 / games.len().max(1) as f64,
        max_shots: games.iter().map(|g| g.shots).max().unwrap_or(0),
        max_iterations: (kind == StrategyKind::Width).then(|| games.iter().map(|g| g.iterations).max().unwrap_or(0)),
        audit,
    })
}

pub fn evaluate(id: &str, shape: &Shape, kinds: &[StrategyKind], config: &EvalConfig) -> Result<EvalReport, EvalError> {
    let n = shape.len();
    let (positions, subsampled) = positions_to_simulate(shape, config);
    let strategies = kinds
        .iter()
        .map(|&k| simulate(shape, k, &positions))
        .collect::<Result<Vec<_>, _>>()?;
    let optimal = if config.compute_optimal {
        Some(Solver::new(shape, config.solver)?.solve()?)
    } else {
        None
    };

    let mut checks = Vec::new();
    let cap = n as i64 - 1;
    for r in &strategies {
        let name = r.strategy.name();
        let misses = r.max_misses as i64;
        match r.strategy {
            StrategyKind::Elimination | StrategyKind::Greedy | StrategyKind::Scan => {
                checks.push(BoundCheck::at_most(format!("{}_misses_le_n_minus_1", name), misses, cap));
            }
            StrategyKind::Staircase => {
                checks.push(BoundCheck::at_most("staircase_misses", misses, staircase_miss_bound(n)));
            }
            StrategyKind::Width => {
                let iterations = r.max_iterations.unwrap_or(0) as i64;
                checks.push(BoundCheck::at_most("width_iterations", iterations, width_iteration_bound(n) as i64));
                checks.push(BoundCheck::at_most("width_misses", misses, width_miss_bound(n) as i64));
            }
        }
        checks.push(BoundCheck::at_most(
            format!("{}_audit_violations", name),
            r.audit.violations.len() as i64,
            0,
        ));
    }
    if let Some(c) = optimal {
        checks.push(BoundCheck::at_most("optimal_le_n_minus_1", c as i64, cap));
        if !subsampled {
            for r in &strategies {
                checks.push(BoundCheck::at_most(
                    format!("optimal_le_{}", r.strategy.name()),
                    c as i64,
                    r.max_misses as i64,
                ));
            }
        }
    }
    Ok(EvalReport {
        id: id.to_string(),
        sha256: content_hash(shape),
        class: classify(shape),
        subsampled,
        positions: positions.len(),
        strategies,
        optimal,
        checks,
    })
}

/// One row per shape and strategy.
pub fn reports_to_csv(reports: &[EvalReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "schema_version",
        "id",
        "sha256",
        "n",
        "polyomino",
        "hv_convex",
        "digital_convex",
        "parallelogram_free",
        "diameter",
        "width",
        "subsampled",
        "positions",
        "strategy",
        "max_misses",
        "mean_misses",
        "max_shots",
        "optimal",
        "checks_passed",
    ])
    .expect("in-memory writer");
    for r in reports {
        for s in &r.strategies {
            let c = &r.class;
            w.write_record([
                REPORT_SCHEMA_VERSION.to_string(),
                r.id.clone(),
                r.sha256.clone(),
                c.n.to_string(),
                c.polyomino.to_string(),
                c.hv_convex.to_string(),
                c.digital_convex.to_string(),
                c.parallelogram_free.to_string(),
                c.diameter.to_string(),
                c.width.to_string(),
                r.subsampled.to_string(),
                r.positions.to_string(),
                s.strategy.name().to_string(),
                s.max_misses.to_string(),
                format!("{:.4}", s.mean_misses),
                s.max_shots.to_string(),
                r.optimal.map_or(String::new(), |v| v.to_string()),
                r.passed().to_string(),
            ])
            .expect("in-memory writer");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[derive(Serialize)]
struct JsonReport<'a, C: Serialize> {
    schema_version: u32,
    config: &'a C,
    reports: &'a [EvalReport],
}

pub fn reports_to_json<C: Serialize>(config: &C, reports: &[EvalReport]) -> String {
    serde_json::to_string_pretty(&JsonReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config,
        reports,
    })
    .expect("plain report")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub a: LatticePoint,
    pub b: LatticePoint,
    pub x: LatticePoint,
    pub y: LatticePoint,
    pub twice_area: i64,
    pub area_ok: bool,
    /// `None` when the quadrilateral is degenerate.
    pub count_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub id: String,
    pub n: usize,
    pub diameter: u64,
    pub width: u64,
    /// `w <= floor(4d/3) + 1`.
    pub width_vs_diameter: bool,
    /// `8n >= 3w^2 - 4w + 24`; `None` for one or two points, where the
    /// inequality reads `n >= 3` and does not hold.
    pub count_vs_width: Option<bool>,
    /// `4n >= w^2`.
    pub count_vs_width_squared: bool,
    /// `None` for collinear sets.
    pub witness: Option<WitnessSummary>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.width_vs_diameter
            && self.count_vs_width != Some(false)
            && self.count_vs_width_squared
            && self.witness.as_ref().map_or(true, |w| w.area_ok && w.count_ok != Some(false))
    }
}

pub fn check_inequalities(id: &str, shape: &Shape) -> Result<InequalityReport, EvalError> {
    if !is_digital_convex(shape) {
        return Err(EvalError::NotDigitalConvex(id.to_string()));
    }
    let n = shape.len() as i128;
    let d = lattice_diameter(shape) as i128;
    let w = lattice_width(shape).width as i128;
    let witness = blaschke_witness(shape).ok().map(|bw| WitnessSummary {
        a: bw.a,
        b: bw.b,
        x: bw.x,
        y: bw.y,
        twice_area: bw.twice_area,
        area_ok: bw.area_bound_holds(),
        count_ok: bw.count_bound_holds(shape.len()),
    });
    Ok(InequalityReport {
        id: id.to_string(),
        n: shape.len(),
        diameter: d as u64,
        width: w as u64,
        width_vs_diameter: w <= 4 * d / 3 + 1,
        count_vs_width: (n >= 3).then(|| 8 * n >= 3 * w * w - 4 * w + 24),
        count_vs_width_squared: 4 * n >= w * w,
        witness,
    })
}

pub fn verify_inequalities(corpus: &[(String, Shape)]) -> Result<Vec<InequalityReport>, EvalError> {
    corpus.par_iter().map(|(id, s)| check_inequalities(id, s)).collect()
}

/// Canonical representative of a digital convex set under translations
/// and unimodular linear maps: the lexicographically smallest sorted image
/// over all maps sending some unimodular triangle of the set to
/// `(0,0), (1,0), (0,1)`. Collinear sets map to a horizontal segment.
pub fn unimodular_canonical(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = points.len();
    if convex_hull_of(points).len() <= 2 {
        return (0..n as i64).map(|x| LatticePoint::new(x, 0)).collect();
    }
    let mut best: Option<Vec<LatticePoint>> = None;
    let mut image = Vec::with_capacity(n);
    for &a in points {
        for &b in points {
            for &c in points {
                let (d1, d2) = (b - a, c - a);
                let det = d1.cross(d2);
                if det != 1 && det != -1 {
                    continue;
                }
                image.clear();
                image.extend(points.iter().map(|&s| {
                    let v = s - a;
                    LatticePoint::new(v.cross(d2) * det, d1.cross(v) * det)
                }));
                image.sort_unstable();
                if best.as_ref().map_or(true, |bst| image < *bst) {
                    best = Some(image.clone());
                }
            }
        }
    }
    best.expect("a non-collinear digital convex set contains a unimodular triangle")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreRow {
    pub n: usize,
    /// Equivalence classes enumerated.
    pub shapes: usize,
    pub max_complexity: u32,
    /// Complexity value to number of classes.
    pub histogram: BTreeMap<u32, usize>,
    /// A class attaining the maximum.
    pub example: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreTable {
    pub rows: Vec<ExploreRow>,
    pub max_complexity: u32,
}

/// All digital convex sets with at most `max_n` points, one per class
/// under translations and unimodular maps (which preserve the game), each
/// solved exactly.
///
/// Growth is complete: removing a hull vertex keeps digital convexity, and
/// once a set is in canonical form (holding the triangle `(0,0), (1,0),
/// (0,1)`) any point whose addition keeps it digital convex lies within
/// `2n` of the origin by Pick's theorem; collinear sets extend by `(n, 0)`
/// or, up to a shear, by `(0, 1)`.
pub fn enumerate_digital_convex(max_n: usize) -> Vec<Vec<Vec<LatticePoint>>> {
    let mut levels: Vec<Vec<Vec<LatticePoint>>> = vec![Vec::new(); max_n + 1];
    if max_n == 0 {
        return levels;
    }
    levels[1] = vec![vec![LatticePoint::ORIGIN]];
    for n in 1..max_n {
        let radius = 2 * n as i64 + 2;
        let next: BTreeSet<Vec<LatticePoint>> = levels[n]
            .par_iter()
            .flat_map_iter(|s| {
                let members: HashSet<LatticePoint> = s.iter().copied().collect();
                let mut found = Vec::new();
                for x in -radius..=radius {
                    for y in -radius..=radius {
                        let z = LatticePoint::new(x, y);
                        if members.contains(&z) {
                            continue;
                        }
                        let mut grown = s.clone();
                        grown.push(z);
                        let hull = convex_hull_of(&grown);
                        if count_lattice_points(&hull).expect("hull").total == grown.len() as u64 {
                            found.push(unimodular_canonical(&grown));
                        }
                    }
                }
                found
            })
            .collect();
        levels[n + 1] = next.into_iter().collect();
    }
    levels
}

pub fn explore_small_convex_complexity(max_n: usize, solver: SolverConfig) -> Result<ExploreTable, EvalError> {
    let levels = enumerate_digital_convex(max_n);
    let mut rows = Vec::new();
    for (n, classes) in levels.iter().enumerate().skip(1) {
        let values: Vec<u32> = classes
            .par_iter()
            .map(|pts| {
                let shape = Shape::new(pts.iter().copied()).expect("distinct");
                Solver::new(&shape, solver)?.solve()
            })
            .collect::<Result<_, SolveError>>()?;
        let mut histogram = BTreeMap::new();
        for &v in &values {
            *histogram.entry(v).or_insert(0) += 1;
        }
        let max_complexity = values.iter().copied().max().unwrap_or(0);
        let example = classes[values.iter().position(|&v| v == max_complexity).unwrap_or(0)].clone();
        rows.push(ExploreRow {
            n,
            shapes: classes.len(),
            max_complexity,
            histogram,
            example,
        });
    }
    Ok(ExploreTable {
        max_complexity: rows.iter().map(|r| r.max_complexity).max().unwrap_or(0),
        rows,
    })
}
