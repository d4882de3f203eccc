#![allow(dead_code)]

use std::collections::HashSet;

use battleship::gen::Rng;
use battleship::{LatticePoint, Shape};

pub fn shape(coords: &[(i64, i64)]) -> Shape {
    Shape::from_coords(coords).unwrap()
}

pub fn block(w: i64, h: i64) -> Shape {
    Shape::new((0..w).flat_map(|x| (0..h).map(move |y| LatticePoint::new(x, y)))).unwrap()
}

fn normalized(mut cells: Vec<LatticePoint>) -> Vec<LatticePoint> {
    let mx = cells.iter().map(|p| p.x).min().unwrap();
    let my = cells.iter().map(|p| p.y).min().unwrap();
    for c in &mut cells {
        *c = LatticePoint::new(c.x - mx, c.y - my);
    }
    cells.sort_unstable();
    cells
}

/// All fixed polyominoes (distinct up to translation) with `n` cells, by
/// growing every `(n-1)`-omino by one neighbouring cell.
pub fn fixed_polyominoes(n: usize) -> Vec<Shape> {
    let mut level: HashSet<Vec<LatticePoint>> = HashSet::from([vec![LatticePoint::new(0, 0)]]);
    for _ in 1..n {
        let mut next = HashSet::new();
        for cells in &level {
            let set: HashSet<_> = cells.iter().copied().collect();
            for c in cells {
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let q = LatticePoint::new(c.x + dx, c.y + dy);
                    if !set.contains(&q) {
                        let mut grown = cells.clone();
                        grown.push(q);
                        next.insert(normalized(grown));
                    }
                }
            }
        }
        level = next;
    }
    let mut out: Vec<Vec<LatticePoint>> = level.into_iter().collect();
    out.sort();
    out.into_iter().map(|c| Shape::new(c).unwrap()).collect()
}

/// `n` distinct random points of a `side x side` box.
pub fn scatter(n: usize, side: i64, rng: &mut Rng) -> Shape {
    let mut pts = HashSet::new();
    while pts.len() < n {
        pts.insert(LatticePoint::new(rng.below(side as u64) as i64, rng.below(side as u64) as i64));
    }
    Shape::new(pts).unwrap()
}

/// Worst-case number of misses over all positions, by plain recursion on
/// explicit point lists.
pub fn brute_complexity(shape: &Shape, p: &[LatticePoint]) -> u32 {
    if p.len() <= 1 {
        return 0;
    }
    let mut shots: Vec<LatticePoint> = p
        .iter()
        .flat_map(|&q| shape.points().iter().map(move |&s| LatticePoint::new(s.x - q.x, s.y - q.y)))
        .collect();
    shots.sort_unstable();
    shots.dedup();
    shots
        .into_iter()
        .filter_map(|x| {
            let (hit, miss): (Vec<_>, Vec<_>) =
                p.iter().partition(|&&q| shape.contains(LatticePoint::new(x.x + q.x, x.y + q.y)));
            (!hit.is_empty() && !miss.is_empty())
                .then(|| brute_complexity(shape, &hit).max(1 + brute_complexity(shape, &miss)))
        })
        .min()
        .unwrap()
}

/// Rows of equal length `len`, each shifted right of the one below by a
/// random amount in `0..len`: HV-convex, with many candidates left after
/// the horizontal scans.
pub fn staircase_band(len: i64, rows: i64, rng: &mut Rng) -> Shape {
    let mut offset = 0;
    let mut pts = Vec::new();
    for y in 0..rows {
        pts.extend((offset..offset + len).map(|x| LatticePoint::new(x, y)));
        offset += rng.below(len as u64) as i64;
    }
    Shape::new(pts).unwrap()
}
