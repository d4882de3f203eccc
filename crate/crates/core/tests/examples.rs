mod common;

use std::collections::{BTreeMap, HashSet};

use battleship::eval::{check_inequalities, classify, evaluate, explore_small_convex_complexity, EvalConfig};
use battleship::game::{run_game, splitting_shot, update, Oracle, Outcome, PositionSet};
use battleship::lattice::{
    blaschke_witness, convex_hull, count_lattice_points, extent, is_digital_convex, is_hv_convex, is_parallelogram_free,
    is_polyomino, lattice_diameter, lattice_points_in_convex, lattice_width,
};
use battleship::point::Direction;
use battleship::solver::{candidate_shots, Solver, SolverConfig, TreeStrategy};
use battleship::strategy::{Elimination, Greedy, RightScan, Staircase, StrategyKind};
use battleship::{LatticePoint, Shape};

use common::{block, brute_complexity, shape};

fn pt(x: i64, y: i64) -> LatticePoint {
    LatticePoint::new(x, y)
}

fn segment4() -> Shape {
    shape(&[(0, 0), (1, 0), (2, 0), (3, 0)])
}

fn l_tromino() -> Shape {
    shape(&[(0, 0), (1, 0), (0, 1)])
}

fn differences_distinct(s: &Shape) -> bool {
    let mut seen = HashSet::new();
    for &a in s.points() {
        for &b in s.points() {
            if a != b && !seen.insert((a.x - b.x, a.y - b.y)) {
                return false;
            }
        }
    }
    true
}

fn diameter_by_lines(s: &Shape) -> u64 {
    let pts = s.points();
    let mut best = 0;
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let on_line = pts
                .iter()
                .filter(|&&c| (b.x - a.x) * (c.y - a.y) == (b.y - a.y) * (c.x - a.x))
                .count();
            best = best.max(on_line as u64 - 1);
        }
    }
    best
}

fn width_by_enumeration(s: &Shape, bound: i64) -> u64 {
    let mut best = u64::MAX;
    for p in -bound..=bound {
        for q in -bound..=bound {
            if (p, q) == (0, 0) {
                continue;
            }
            let dots: Vec<i64> = s.points().iter().map(|c| p * c.x + q * c.y).collect();
            let spread = (dots.iter().max().unwrap() - dots.iter().min().unwrap()) as u64;
            best = best.min(spread);
        }
    }
    best
}

#[test]
fn normalization_examples() {
    assert_eq!(shape(&[(5, 7)]).normalize(), shape(&[(0, 0)]));
    assert_eq!(shape(&[(0, 0), (1, 0)]).normalize(), shape(&[(0, 0), (1, 0)]));
    assert_eq!(shape(&[(-1, 2), (0, 2), (0, 3)]).normalize(), shape(&[(0, 0), (1, 0), (1, 1)]));
}

#[test]
fn predicate_examples() {
    assert!(is_polyomino(&segment4()));
    assert!(!is_polyomino(&shape(&[(0, 0), (1, 1)])));
    assert!(is_polyomino(&shape(&[(0, 0)])));

    assert!(!is_hv_convex(&shape(&[(0, 0), (2, 0)])));
    assert!(is_hv_convex(&shape(&[(0, 0), (1, 0), (1, 1)])));
    assert!(is_hv_convex(&block(3, 3)));

    assert!(differences_distinct(&l_tromino()));
    assert!(is_parallelogram_free(&l_tromino()));
    assert!(!is_parallelogram_free(&block(2, 2)));
    assert!(is_parallelogram_free(&shape(&[(0, 0)])));

    assert!(!is_digital_convex(&shape(&[(0, 0), (2, 0)])));
    assert!(is_digital_convex(&l_tromino()));
    for (w, h) in [(1, 1), (2, 5), (4, 3)] {
        assert!(is_digital_convex(&block(w, h)));
    }
}

#[test]
fn hv_convex_polyomino_need_not_be_digital_convex() {
    let s = shape(&[(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)]);
    assert!(is_polyomino(&s) && is_hv_convex(&s));
    assert!(!is_digital_convex(&s));
    assert!(lattice_points_in_convex(&convex_hull(&s)).contains(&pt(1, 1)));
}

#[test]
fn hull_and_pick_examples() {
    assert_eq!(convex_hull(&block(2, 2)), vec![pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]);
    assert_eq!(convex_hull(&shape(&[(0, 0), (1, 0), (2, 0)])), vec![pt(0, 0), pt(2, 0)]);
    assert_eq!(convex_hull(&shape(&[(0, 0)])), vec![pt(0, 0)]);

    let square = count_lattice_points(&[pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]).unwrap();
    assert_eq!((square.twice_area, square.boundary, square.interior, square.total), (2, 4, 0, 4));
    let tri = count_lattice_points(&[pt(0, 0), pt(1, 0), pt(0, 1)]).unwrap();
    assert_eq!((tri.twice_area, tri.boundary, tri.interior, tri.total), (1, 3, 0, 3));
    assert_eq!(count_lattice_points(&[pt(0, 0), pt(3, 0)]).unwrap().total, 4);
}

#[test]
fn diameter_examples() {
    assert_eq!(lattice_diameter(&segment4()), 3);
    assert_eq!(lattice_diameter(&shape(&[(0, 0)])), 0);
    assert_eq!(lattice_diameter(&block(3, 3)), diameter_by_lines(&block(3, 3)));
    assert_eq!(lattice_diameter(&block(3, 3)), 2);
}

#[test]
fn width_examples() {
    assert_eq!(lattice_width(&segment4()).width, 0);
    assert_eq!(lattice_width(&block(3, 3)).width, width_by_enumeration(&block(3, 3), 6));
    assert_eq!(lattice_width(&block(3, 3)).width, 2);
    assert_eq!(lattice_width(&l_tromino()).width, width_by_enumeration(&l_tromino(), 6));
    assert_eq!(lattice_width(&l_tromino()).width, 1);

    assert_eq!(extent(&segment4(), Direction::new(1, 0).unwrap()), 3);
    assert_eq!(extent(&segment4(), Direction::new(0, 1).unwrap()), 0);
    let dots: Vec<i64> = l_tromino().points().iter().map(|c| c.x + c.y).collect();
    let spread = dots.iter().max().unwrap() - dots.iter().min().unwrap();
    assert_eq!(extent(&l_tromino(), Direction::new(1, 1).unwrap()), spread as u64);
    assert_eq!(spread, 1);
}

#[test]
fn witness_examples() {
    let w = blaschke_witness(&block(3, 3)).unwrap();
    assert!(w.twice_area >= 2 * 2);
    assert!(w.area_bound_holds());

    let w = blaschke_witness(&block(5, 5)).unwrap();
    assert_eq!((w.diameter, w.width), (4, 4));
    assert!(2 * 25 >= 4 * 4 + 6);
    assert!(w.area_bound_holds());
    assert_ne!(w.count_bound_holds(25), Some(false));

    let w = blaschke_witness(&l_tromino()).unwrap();
    assert_eq!((w.diameter, w.width), (1, 1));
    assert!(w.is_degenerate());
    assert_eq!(w.count_bound_holds(3), None);
}

#[test]
fn oracle_examples() {
    let s = segment4();
    assert_eq!(Oracle::new(&s, pt(0, 0)).unwrap().answer(pt(1, 0)), Outcome::Hit);
    assert_eq!(Oracle::new(&s, pt(3, 0)).unwrap().answer(pt(1, 0)), Outcome::Miss);
    for &p in s.points() {
        assert_eq!(Oracle::new(&s, p).unwrap().answer(pt(0, 0)), Outcome::Hit);
    }
}

#[test]
fn update_examples() {
    let s = segment4();
    let p = PositionSet::full(&s);
    let hit = update(&p, &s, pt(1, 0), Outcome::Hit).unwrap();
    assert_eq!(hit.points(), vec![pt(0, 0), pt(1, 0), pt(2, 0)]);
    let miss = update(&p, &s, pt(3, 0), Outcome::Miss).unwrap();
    assert_eq!(miss.points(), vec![pt(1, 0), pt(2, 0), pt(3, 0)]);
    let single = PositionSet::from_points([pt(0, 0)]);
    assert_eq!(update(&single, &s, pt(2, 0), Outcome::Hit).unwrap().points(), vec![pt(0, 0)]);
}

#[test]
fn splitting_examples() {
    let s = segment4();
    let full = PositionSet::full(&s);
    assert_eq!(full.hit_count(&s, pt(3, 0)), 1);
    assert!(full.is_splitting(&s, pt(3, 0)));

    let pair = PositionSet::from_points([pt(0, 0), pt(1, 0)]);
    assert!(s.contains(pt(0, 0)) && !s.contains(pt(-1, 0)));
    assert!(pair.is_splitting(&s, pt(-1, 0)));
    let x = splitting_shot(&pair, &s).unwrap();
    assert!(pair.is_splitting(&s, x));
    assert!(splitting_shot(&PositionSet::from_points([pt(0, 0)]), &s).is_err());

    let l = l_tromino();
    let vertical = PositionSet::from_points([pt(0, 0), pt(0, 1)]);
    assert!(vertical.is_splitting(&l, pt(1, 0)));
}

#[test]
fn candidate_examples() {
    let s = segment4();
    let full = PositionSet::full(&s);
    let got: HashSet<LatticePoint> = candidate_shots(&full, &s).into_iter().collect();
    assert!(got.contains(&pt(3, 0)) && got.contains(&pt(-3, 0)));
    assert!(!got.contains(&pt(0, 0)));
    let masks: HashSet<Vec<bool>> = (-4..=4)
        .flat_map(|x| (-4..=4).map(move |y| pt(x, y)))
        .filter(|&x| full.is_splitting(&s, x))
        .map(|x| full.iter().map(|p| s.contains(x + p)).collect())
        .collect();
    assert_eq!(got.len(), masks.len());
}

#[test]
fn right_scan_examples() {
    let s = segment4();
    assert_eq!(run_game(&s, &mut RightScan::new(), pt(0, 0)).unwrap().miss_count, 0);
    assert_eq!(run_game(&s, &mut RightScan::new(), pt(3, 0)).unwrap().miss_count, 1);
    let single = shape(&[(4, 4)]);
    let trace = run_game(&single, &mut RightScan::new(), pt(4, 4)).unwrap();
    assert_eq!((trace.shots.len(), trace.miss_count), (0, 0));
}

#[test]
fn elimination_and_greedy_examples() {
    let l = l_tromino();
    let worst = |s: &Shape, make: &dyn Fn() -> Box<dyn battleship::strategy::Strategy>| {
        s.points().iter().map(|&p| run_game(s, make().as_mut(), p).unwrap().miss_count).max().unwrap()
    };
    assert_eq!(worst(&l, &|| Box::new(Elimination::new())), 2);
    assert_eq!(worst(&l, &|| Box::new(Greedy::new())), 2);
    assert_eq!(worst(&segment4(), &|| Box::new(Greedy::new())), 1);
    assert_eq!(worst(&segment4(), &|| Box::new(Staircase::new())), 1);
    let single = shape(&[(0, 0)]);
    assert_eq!(run_game(&single, &mut Elimination::new(), pt(0, 0)).unwrap().shots.len(), 0);
}

#[test]
fn solver_examples() {
    let solve = |s: &Shape| Solver::new(s, SolverConfig::default()).unwrap().solve().unwrap();
    assert_eq!(solve(&shape(&[(0, 0)])), 0);
    assert_eq!(solve(&segment4()), 1);
    assert_eq!(solve(&l_tromino()), brute_complexity(&l_tromino(), l_tromino().points()));
    assert_eq!(solve(&l_tromino()), 2);
    assert_eq!(solve(&block(2, 2)), brute_complexity(&block(2, 2), block(2, 2).points()));
    for len in 2..=16 {
        let seg = Shape::new((0..len).map(|x| pt(x, 0))).unwrap();
        assert_eq!(solve(&seg), 1);
    }
}

#[test]
fn tree_examples() {
    let replay = |s: &Shape| {
        let tree = Solver::new(s, SolverConfig::default()).unwrap().extract_tree().unwrap();
        let worst = s
            .points()
            .iter()
            .map(|&p| run_game(s, &mut TreeStrategy::new(&tree), p).unwrap().miss_count)
            .max()
            .unwrap();
        (tree, worst)
    };
    let (tree, worst) = replay(&segment4());
    assert_eq!((tree.max_misses(), worst), (1, 1));
    let four = shape(&[(0, 0), (1, 0), (0, 1), (0, 3)]);
    assert!(is_parallelogram_free(&four) && differences_distinct(&four));
    let (tree, worst) = replay(&four);
    assert_eq!((tree.max_misses(), worst, tree.leaves()), (3, 3, 4));
    let (tree, _) = replay(&shape(&[(2, 2)]));
    assert_eq!(tree.leaves(), 1);
    assert_eq!(tree.max_misses(), 0);
}

#[test]
fn evaluate_examples() {
    let config = EvalConfig {
        compute_optimal: true,
        ..EvalConfig::default()
    };
    let kinds: Vec<StrategyKind> = StrategyKind::ALL.into_iter().filter(|k| k.applicable(&segment4())).collect();
    let r = evaluate("segment4", &segment4(), &kinds, &config).unwrap();
    assert_eq!(r.optimal, Some(1));
    assert!(r.result(StrategyKind::Elimination).unwrap().max_misses <= 3);
    assert!(r.result(StrategyKind::Staircase).unwrap().max_misses <= 2);
    assert!(r.passed());

    let r = evaluate("l", &l_tromino(), &[StrategyKind::Elimination], &config).unwrap();
    assert_eq!(r.optimal, Some(2));
}

#[test]
fn width_strategy_on_thousand_point_sets() {
    use battleship::gen::{generate, GenSpec, ShapeClass};
    use battleship::strategy::width_iteration_bound;
    for seed in 0..10 {
        let s = generate(&GenSpec::new(ShapeClass::DigitalConvex { n: 1000 }, seed)).unwrap();
        let config = EvalConfig {
            subsample_threshold: 0,
            sample_size: 64,
            seed,
            ..EvalConfig::default()
        };
        let r = evaluate("dc", &s, &[StrategyKind::Width], &config).unwrap();
        let res = r.result(StrategyKind::Width).unwrap();
        assert!(res.max_iterations.unwrap() <= width_iteration_bound(s.len()));
        assert!(r.passed(), "{:?}", r.checks);
    }
}

#[test]
fn inequality_examples() {
    let r = check_inequalities("b5", &block(5, 5)).unwrap();
    assert_eq!((r.diameter, r.width), (4, 4));
    assert!(4 <= 16 / 3 + 1);
    assert!(8 * 25 >= 3 * 16 - 4 * 4 + 24);
    assert!(4 * 25 >= 16);
    assert!(r.passed());
    let r = check_inequalities("seg", &segment4()).unwrap();
    assert_eq!(r.width, 0);
    assert!(r.passed() && r.witness.is_none());
    assert!(check_inequalities("gap", &shape(&[(0, 0), (2, 0)])).is_err());
}

#[test]
fn quarter_square_stays_below_count_bound() {
    for x in 0i64..10_000 {
        assert!(2 * x * x <= 3 * x * x - 4 * x + 24);
    }
}

#[test]
fn classify_examples() {
    let c = classify(&segment4());
    assert_eq!(c.n, 4);
    assert!(c.polyomino && c.hv_convex && c.digital_convex && !c.parallelogram_free);
    assert_eq!((c.diameter, c.width), (3, 0));
    assert!(classify(&l_tromino()).parallelogram_free);
    assert!(!classify(&shape(&[(0, 0), (1, 0), (3, 0)])).digital_convex);
}

#[test]
fn explore_agrees_with_box_search_up_to_six() {
    let table = explore_small_convex_complexity(6, SolverConfig::default()).unwrap();
    let cells: Vec<LatticePoint> = (0..4).flat_map(|x| (0..4).map(move |y| pt(x, y))).collect();
    let mut best: BTreeMap<usize, u32> = BTreeMap::new();
    for mask in 1u32..(1 << cells.len()) {
        if mask.count_ones() > 6 {
            continue;
        }
        let s = Shape::new((0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i])).unwrap();
        if s.normalize() != s || !is_digital_convex(&s) {
            continue;
        }
        let c = brute_complexity(&s, s.points());
        let e = best.entry(s.len()).or_insert(0);
        *e = (*e).max(c);
    }
    for row in &table.rows {
        assert_eq!(best.get(&row.n).copied().unwrap_or(0), row.max_complexity, "n={}", row.n);
    }
}
