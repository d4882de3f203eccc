mod common;

use proptest::prelude::*;

use battleship::eval::{check_inequalities, classify};
use battleship::game::{consistent_positions, run_game, update, Oracle, PositionSet, ShotRecord};
use battleship::gen::{generate, GenSpec, ShapeClass};
use battleship::io::{parse_shape, to_ascii, to_json};
use battleship::lattice::{
    convex_hull, count_lattice_points, extent, is_digital_convex, is_hv_convex, is_parallelogram_free, lattice_width,
    lattice_width_bounded, lattice_points_in_convex, orient, width_search_bound,
};
use battleship::point::Direction;
use battleship::solver::{Solver, SolverConfig};
use battleship::strategy::StrategyKind;
use battleship::{LatticePoint, Shape};

use common::brute_complexity;

fn arb_shape(side: i64, max_len: usize) -> impl Strategy<Value = Shape> {
    prop::collection::vec((0..side, 0..side), 1..=max_len).prop_map(|coords| {
        let mut coords = coords;
        coords.sort_unstable();
        coords.dedup();
        Shape::from_coords(&coords).unwrap()
    })
}

fn arb_offset() -> impl Strategy<Value = LatticePoint> {
    (-1000i64..1000, -1000i64..1000).prop_map(|(x, y)| LatticePoint::new(x, y))
}

fn literal_width(shape: &Shape) -> u64 {
    let b = width_search_bound(shape);
    let mut best = u64::MAX;
    for p in -b..=b {
        for q in -b..=b {
            if let Ok(d) = Direction::new(p, q) {
                best = best.min(extent(shape, d));
            }
        }
    }
    best
}

fn inside_hull(hull: &[LatticePoint], z: LatticePoint) -> bool {
    match hull.len() {
        1 => hull[0] == z,
        2 => {
            orient(hull[0], hull[1], z) == 0
                && z.x >= hull[0].x.min(hull[1].x)
                && z.x <= hull[0].x.max(hull[1].x)
                && z.y >= hull[0].y.min(hull[1].y)
                && z.y <= hull[0].y.max(hull[1].y)
        }
        k => {
            let sign = (0..k).map(|i| orient(hull[i], hull[(i + 1) % k], z));
            let signs: Vec<i64> = sign.collect();
            signs.iter().all(|&s| s >= 0) || signs.iter().all(|&s| s <= 0)
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(s in arb_shape(12, 30), t in arb_offset()) {
        let moved = s.translate(t);
        prop_assert_eq!(moved.normalize(), s.normalize());
        prop_assert_eq!(moved.normalize().normalize(), moved.normalize());
        prop_assert!(moved.normalize().is_normalized());
    }

    #[test]
    fn classification_ignores_translation(s in arb_shape(8, 25), t in arb_offset()) {
        prop_assert_eq!(classify(&s), classify(&s.translate(t)));
    }

    #[test]
    fn width_is_at_most_axis_extents(s in arb_shape(10, 30)) {
        let (ex, ey) = s.extents();
        let cert = lattice_width(&s);
        prop_assert!(cert.width <= ex.min(ey) as u64);
        prop_assert_eq!(extent(&s, cert.functional), cert.width);
    }

    #[test]
    fn width_matches_literal_enumeration(s in arb_shape(7, 12)) {
        prop_assert_eq!(lattice_width(&s).width, literal_width(&s));
    }

    #[test]
    fn width_stable_under_doubled_bound(s in arb_shape(20, 60)) {
        let b = width_search_bound(&s);
        prop_assert_eq!(lattice_width(&s).width, lattice_width_bounded(&s, b).width);
        prop_assert_eq!(lattice_width_bounded(&s, b).width, lattice_width_bounded(&s, 2 * b).width);
    }

    #[test]
    fn pick_count_matches_box_scan(s in arb_shape(12, 20)) {
        let hull = convex_hull(&s);
        let lo = s.min_corner();
        let hi = s.max_corner();
        let scanned = (lo.x..=hi.x)
            .flat_map(|x| (lo.y..=hi.y).map(move |y| LatticePoint::new(x, y)))
            .filter(|&z| inside_hull(&hull, z))
            .count() as u64;
        prop_assert_eq!(lattice_points_in_convex(&hull).len() as u64, scanned);
        if hull.len() >= 3 {
            let pick = count_lattice_points(&hull).unwrap();
            prop_assert_eq!(pick.total, scanned);
            prop_assert_eq!(2 * pick.total as i64, pick.twice_area + pick.boundary as i64 + 2);
        }
        prop_assert_eq!(is_digital_convex(&s), scanned == s.len() as u64);
    }

    #[test]
    fn digital_convex_is_hv_convex(n in 3usize..400, seed in any::<u64>()) {
        let s = generate(&GenSpec::new(ShapeClass::DigitalConvex { n }, seed)).unwrap();
        prop_assert!(is_digital_convex(&s));
        prop_assert!(is_hv_convex(&s));
    }

    #[test]
    fn random_digital_convex_is_hv_convex(s in arb_shape(5, 12)) {
        if is_digital_convex(&s) {
            prop_assert!(is_hv_convex(&s));
        }
    }

    #[test]
    fn updates_are_sound_and_monotone(
        s in arb_shape(6, 15),
        pick in any::<prop::sample::Index>(),
        shots in prop::collection::vec((-6i64..7, -6i64..7), 0..12),
    ) {
        let hidden = s.points()[pick.index(s.len())];
        let oracle = Oracle::new(&s, hidden).unwrap();
        let mut p = PositionSet::full(&s);
        let mut records = Vec::new();
        for (x, y) in shots {
            let shot = LatticePoint::new(x, y);
            let outcome = oracle.answer(shot);
            let next = update(&p, &s, shot, outcome).unwrap();
            prop_assert!(next.len() <= p.len());
            prop_assert!(next.contains(hidden));
            prop_assert!(next.iter().all(|q| p.contains(q)));
            records.push(ShotRecord { shot, outcome, remaining: next.len() });
            prop_assert_eq!(next.points(), consistent_positions(&s, &records).points());
            p = next;
        }
    }

    #[test]
    fn parallelogram_free_hits_identify(n in 1usize..12, seed in any::<u64>()) {
        let s = generate(&GenSpec::new(ShapeClass::ParallelogramFree { n }, seed)).unwrap();
        prop_assert!(is_parallelogram_free(&s));
        let full = PositionSet::full(&s);
        for &a in s.points() {
            for &b in s.points() {
                let x = LatticePoint::new(a.x - b.x, a.y - b.y);
                if !x.is_origin() {
                    prop_assert_eq!(full.hit_count(&s, x), 1);
                }
            }
        }
    }

    #[test]
    fn inequalities_hold_pointwise(n in 3usize..2000, seed in any::<u64>()) {
        let s = generate(&GenSpec::new(ShapeClass::DigitalConvex { n }, seed)).unwrap();
        let r = check_inequalities("p", &s).unwrap();
        let (n, w) = (s.len() as u64, r.width);
        prop_assert!(4 * n >= w * w);
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn every_strategy_finds_the_ship(s in arb_shape(6, 14)) {
        let n = s.len() as u32;
        for kind in StrategyKind::ALL {
            if !kind.applicable(&s) {
                continue;
            }
            for &p in s.points() {
                let mut strategy = kind.instantiate(&s).unwrap();
                let trace = run_game(&s, strategy.as_mut(), p).unwrap();
                prop_assert_eq!(trace.declared_position, Some(p));
                if kind != StrategyKind::Width && kind != StrategyKind::Staircase {
                    prop_assert!(trace.miss_count < n.max(1));
                }
            }
        }
    }

    #[test]
    fn solver_matches_recursion(s in arb_shape(4, 6)) {
        let c = Solver::new(&s, SolverConfig::default()).unwrap().solve().unwrap();
        prop_assert_eq!(c, brute_complexity(&s, s.points()));
    }

    #[test]
    fn shape_files_round_trip(s in arb_shape(9, 25)) {
        prop_assert_eq!(parse_shape(&to_json(&s)).unwrap(), s.clone());
        prop_assert_eq!(parse_shape(&to_ascii(&s)).unwrap(), s.normalize());
    }

    #[test]
    fn generation_is_reproducible(n in 1usize..60, seed in any::<u64>(), which in 0usize..4) {
        let class = match which {
            0 => ShapeClass::HvConvex { n },
            1 => ShapeClass::RandomPolyomino { n },
            2 => ShapeClass::ParallelogramFree { n },
            _ => ShapeClass::DigitalConvex { n: n.max(3) },
        };
        let spec = GenSpec::new(class.clone(), seed);
        let a = generate(&spec).unwrap();
        prop_assert_eq!(&a, &generate(&spec).unwrap());
        prop_assert!(class.predicate(&a));
        prop_assert!(a.is_normalized());
        if which < 3 {
            prop_assert_eq!(a.len(), n);
        }
    }
}

#[test]
fn width_stable_on_generated_shapes() {
    let mut rng = battleship::gen::Rng::new(11);
    for i in 0..200 {
        let n = 3 + rng.below(58) as usize;
        let class = if i % 2 == 0 {
            ShapeClass::DigitalConvex { n }
        } else {
            ShapeClass::RandomPolyomino { n }
        };
        let s = generate(&GenSpec::new(class, rng.next_u64())).unwrap();
        let b = width_search_bound(&s);
        let w = lattice_width(&s).width;
        assert_eq!(w, lattice_width_bounded(&s, b).width, "{:?}", s.points());
        assert_eq!(w, lattice_width_bounded(&s, 2 * b).width, "{:?}", s.points());
    }
}
