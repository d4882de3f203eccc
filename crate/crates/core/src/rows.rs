//! Row-run encoding of lattice sets.
//!
//! A set is stored as its non-empty rows in increasing `y`, each row being a
//! sorted list of disjoint, non-adjacent inclusive runs. Translate
//! intersection and difference then cost O(number of runs) instead of
//! O(number of points), which keeps position-set updates cheap on large
//! convex shapes.

use crate::point::LatticePoint;

/// Inclusive horizontal run `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: i64,
    pub end: i64,
}

impl Run {
    pub fn len(self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn contains(self, x: i64) -> bool {
        self.start <= x && x <= self.end
    }
}

/// One non-empty row: its `y` and its runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Row<'a> {
    pub y: i64,
    pub runs: &'a [Run],
}

/// Runs of all rows in one vector; row `i` owns
/// `runs[bounds[i]..bounds[i + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSet {
    ys: Vec<i64>,
    bounds: Vec<usize>,
    runs: Vec<Run>,
    len: usize,
}

impl Default for RowSet {
    fn default() -> Self {
        RowSet {
            ys: Vec::new(),
            bounds: vec![0],
            runs: Vec::new(),
            len: 0,
        }
    }
}

impl RowSet {
    /// Builds from arbitrary points; duplicates collapse.
    pub fn from_points<I: IntoIterator<Item = LatticePoint>>(points: I) -> Self {
        let mut pts: Vec<(i64, i64)> = points.into_iter().map(|p| (p.y, p.x)).collect();
        pts.sort_unstable();
        pts.dedup();
        let mut set = RowSet::default();
        for (y, x) in pts {
            if set.ys.last() == Some(&y) {
                let last = set.runs.last_mut().expect("rows are never empty");
                if last.end + 1 == x {
                    last.end = x;
                    continue;
                }
            } else {
                set.close_row();
                set.ys.push(y);
            }
            set.runs.push(Run { start: x, end: x });
        }
        set.close_row();
        set.len = set.runs.iter().map(|r| r.len()).sum();
        set
    }

    /// Ends the row opened by the last push to `ys`; drops it when empty.
    fn close_row(&mut self) {
        if self.bounds.len() == self.ys.len() {
            if *self.bounds.last().expect("bounds start at 0") == self.runs.len() {
                self.ys.pop();
            } else {
                self.bounds.push(self.runs.len());
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn row_count(&self) -> usize {
        self.ys.len()
    }

    fn row_at(&self, i: usize) -> Row<'_> {
        Row {
            y: self.ys[i],
            runs: &self.runs[self.bounds[i]..self.bounds[i + 1]],
        }
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = Row<'_>> + '_ {
        (0..self.ys.len()).map(move |i| self.row_at(i))
    }

    pub fn row(&self, y: i64) -> Option<&[Run]> {
        self.ys.binary_search(&y).ok().map(|i| self.row_at(i).runs)
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.row(p.y) {
            None => false,
            Some(runs) => {
                let i = runs.partition_point(|r| r.end < p.x);
                i < runs.len() && runs[i].start <= p.x
            }
        }
    }

    /// Points in row-major order (`y`, then `x`).
    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.rows().flat_map(|row| {
            row.runs
                .iter()
                .flat_map(move |r| (r.start..=r.end).map(move |x| LatticePoint::new(x, row.y)))
        })
    }

    /// The two endpoints of every run (one point for unit runs). Every vertex
    /// of the convex hull is among them.
    pub fn run_endpoints(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(2 * self.run_count());
        for row in self.rows() {
            for r in row.runs {
                out.push(LatticePoint::new(r.start, row.y));
                if r.end != r.start {
                    out.push(LatticePoint::new(r.end, row.y));
                }
            }
        }
        out
    }

    /// `{p in self : p + shift in other}`.
    pub fn intersect_shifted(&self, other: &RowSet, shift: LatticePoint) -> RowSet {
        self.combine_shifted(other, shift, true)
    }

    /// `{p in self : p + shift not in other}`.
    pub fn subtract_shifted(&self, other: &RowSet, shift: LatticePoint) -> RowSet {
        self.combine_shifted(other, shift, false)
    }

    /// `|{p in self : p + shift in other}|` without materializing the set.
    pub fn count_shifted(&self, other: &RowSet, shift: LatticePoint) -> usize {
        let mut total = 0;
        let mut j = 0;
        for row in self.rows() {
            let target = row.y + shift.y;
            let k = seek(&other.ys, target, &mut j);
            if k < other.ys.len() && other.ys[k] == target {
                total += overlap_len(row.runs, other.row_at(k).runs, shift.x);
            }
        }
        total
    }

    fn combine_shifted(&self, other: &RowSet, shift: LatticePoint, keep_inside: bool) -> RowSet {
        let mut out = RowSet {
            ys: Vec::with_capacity(self.ys.len()),
            bounds: Vec::with_capacity(self.ys.len() + 1),
            runs: Vec::with_capacity(self.runs.len()),
            len: 0,
        };
        out.bounds.push(0);
        let mut j = 0;
        for row in self.rows() {
            let target = row.y + shift.y;
            let k = seek(&other.ys, target, &mut j);
            let other_runs: &[Run] = if k < other.ys.len() && other.ys[k] == target {
                other.row_at(k).runs
            } else {
                &[]
            };
            out.ys.push(row.y);
            if keep_inside {
                intersect_runs(row.runs, other_runs, shift.x, &mut out.runs);
            } else {
                subtract_runs(row.runs, other_runs, shift.x, &mut out.runs);
            }
            out.close_row();
        }
        out.len = out.runs.iter().map(|r| r.len()).sum();
        out
    }
}

/// Advances the cursor `j` to the first row of `ys` at or above `y`.
fn seek(ys: &[i64], y: i64, j: &mut usize) -> usize {
    while *j < ys.len() && ys[*j] < y {
        *j += 1;
    }
    *j
}

/// Intersection of `a` with `b` translated by `-dx`, appended to `out`.
fn intersect_runs(a: &[Run], b: &[Run], dx: i64, out: &mut Vec<Run>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (bs, be) = (b[j].start - dx, b[j].end - dx);
        let start = a[i].start.max(bs);
        let end = a[i].end.min(be);
        if start <= end {
            out.push(Run { start, end });
        }
        if a[i].end < be {
            i += 1;
        } else {
            j += 1;
        }
    }
}

fn overlap_len(a: &[Run], b: &[Run], dx: i64) -> usize {
    let mut total = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let be = b[j].end - dx;
        let start = a[i].start.max(b[j].start - dx);
        let end = a[i].end.min(be);
        if start <= end {
            total += (end - start + 1) as usize;
        }
        if a[i].end < be {
            i += 1;
        } else {
            j += 1;
        }
    }
    total
}

/// `a` minus (`b` translated by `-dx`), appended to `out`.
fn subtract_runs(a: &[Run], b: &[Run], dx: i64, out: &mut Vec<Run>) {
    let mut j = 0;
    for run in a {
        let mut cur = run.start;
        while j < b.len() && b[j].end - dx < cur {
            j += 1;
        }
        let mut k = j;
        while cur <= run.end {
            if k >= b.len() || b[k].start - dx > run.end {
                out.push(Run {
                    start: cur,
                    end: run.end,
                });
                break;
            }
            let (bs, be) = (b[k].start - dx, b[k].end - dx);
            if bs > cur {
                out.push(Run {
                    start: cur,
                    end: bs - 1,
                });
            }
            cur = cur.max(be + 1);
            k += 1;
        }
    }
}
