//! Clump census by fixed-polyomino growth.
//!
//! Polyominoes are grown from the origin over the half-plane of cells that
//! come after the origin in row-major order (`y > 0`, or `y == 0 && x >= 0`),
//! using an untried-set recursion that visits each translation class exactly
//! once. Every grown polyomino is filtered through the clump oracle. The
//! origin is then the row-major minimum cell, which is the canonical form.

use rayon::prelude::*;

use crate::cell::{Cell, CubicalSet};
use crate::error::{Error, Result};
use crate::topology::is_clump_cells;

/// Largest census size accepted by default.
pub const DEFAULT_MAX_N: usize = 16;

/// Counts `a_1 ..= a_{n_max}` of clumps up to translation.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub n_max: usize,
    /// `counts[n - 1] = a_n`.
    pub counts: Vec<u64>,
    /// Canonical clumps per size, when requested.
    pub clumps: Option<Vec<Vec<CubicalSet>>>,
}

impl Census {
    pub fn a(&self, n: usize) -> u64 {
        self.counts[n - 1]
    }

    /// `a_n / a_{n-1}` for `n >= 2`.
    pub fn ratio(&self, n: usize) -> Option<f64> {
        (n >= 2 && n <= self.n_max).then(|| self.a(n) as f64 / self.a(n - 1) as f64)
    }

    /// `a_n^(1/n)`.
    pub fn root(&self, n: usize) -> f64 {
        (self.a(n) as f64).powf(1.0 / n as f64)
    }

    /// `n,a_n,ratio,root` rows, ratio left empty for `n = 1`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,a_n,ratio,root\n");
        for n in 1..=self.n_max {
            let ratio = self.ratio(n).map(|r| r.to_string()).unwrap_or_default();
            s.push_str(&format!("{n},{},{ratio},{}\n", self.a(n), self.root(n)));
        }
        s
    }

    pub fn clumps_of(&self, n: usize) -> Option<&[CubicalSet]> {
        self.clumps.as_ref().map(|c| c[n - 1].as_slice())
    }
}

/// Counts clumps of every size up to `n_max`.
pub fn census(n_max: usize) -> Result<Census> {
    census_with(n_max, DEFAULT_MAX_N, false)
}

/// Counts clumps and also stores the canonical representatives.
pub fn census_with_clumps(n_max: usize) -> Result<Census> {
    census_with(n_max, DEFAULT_MAX_N, true)
}

pub fn census_with(n_max: usize, bound: usize, keep: bool) -> Result<Census> {
    check_bound(n_max, bound)?;
    let branches = Grower::new(n_max).top_level_branches();
    let results: Vec<(Vec<u64>, Vec<Vec<CubicalSet>>)> = (0..branches)
        .into_par_iter()
        .map(|b| {
            let mut counts = vec![0u64; n_max];
            let mut lists = vec![Vec::new(); if keep { n_max } else { 0 }];
            Grower::new(n_max).run_branch(b, &mut |cells: &[Cell]| {
                if is_clump_cells(cells) {
                    counts[cells.len() - 1] += 1;
                    if keep {
                        lists[cells.len() - 1].push(cells.iter().copied().collect());
                    }
                }
            });
            (counts, lists)
        })
        .collect();

    let mut counts = vec![0u64; n_max];
    counts[0] = 1; // the single square, grown before any branch
    let mut lists: Vec<Vec<CubicalSet>> = vec![Vec::new(); if keep { n_max } else { 0 }];
    if keep {
        lists[0].push(std::iter::once(Cell::ORIGIN).collect());
    }
    for (c, l) in results {
        for (acc, v) in counts.iter_mut().zip(c) {
            *acc += v;
        }
        for (acc, v) in lists.iter_mut().zip(l) {
            acc.extend(v);
        }
    }
    for l in lists.iter_mut() {
        l.sort();
    }
    Ok(Census {
        n_max,
        counts,
        clumps: keep.then_some(lists),
    })
}

/// All canonical clumps of exactly `n` cells.
pub fn enumerate_clumps(n: usize) -> Result<Vec<CubicalSet>> {
    check_bound(n, DEFAULT_MAX_N)?;
    if n == 0 {
        return Err(Error::InvalidParameter("clump size must be at least 1".into()));
    }
    let census = census_with(n, DEFAULT_MAX_N, true)?;
    Ok(census.clumps.expect("kept")[n - 1].clone())
}

/// Visits every fixed polyomino of size `<= n_max` (all sizes, including 1).
/// Independent of the clump filter; exposed for census cross-checks.
pub fn for_each_polyomino(n_max: usize, mut f: impl FnMut(&[Cell])) {
    if n_max == 0 {
        return;
    }
    f(&[Cell::ORIGIN]);
    let mut g = Grower::new(n_max);
    for b in 0..g.top_level_branches() {
        g = Grower::new(n_max);
        g.run_branch(b, &mut f);
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("census size must be at least 1".into()));
    }
    if n > bound {
        return Err(Error::ResourceBound {
            requested: n,
            bound,
        });
    }
    Ok(())
}

struct Grower {
    n_max: usize,
    width: usize,
    /// Cells already placed or queued at some level of the recursion.
    marked: Vec<bool>,
    poly: Vec<Cell>,
    initial: Vec<usize>,
}

impl Grower {
    fn new(n_max: usize) -> Self {
        let n = n_max as i32;
        // x in [-n, n], y in [-1, n]
        let width = (2 * n + 1) as usize;
        let height = (n + 2) as usize;
        let mut g = Grower {
            n_max,
            width,
            marked: vec![false; width * height],
            poly: Vec::with_capacity(n_max),
            initial: Vec::new(),
        };
        for y in -1..=n {
            for x in -n..=n {
                let before_origin = y < 0 || (y == 0 && x < 0);
                let edge = x == -n || x == n || y == n;
                if before_origin || edge {
                    let k = g.index(Cell::new(x, y));
                    g.marked[k] = true;
                }
            }
        }
        let o = g.index(Cell::ORIGIN);
        g.marked[o] = true;
        g.poly.push(Cell::ORIGIN);
        let initial = g.fresh_neighbors(Cell::ORIGIN);
        g.initial = initial;
        g
    }

    fn index(&self, c: Cell) -> usize {
        let n = self.n_max as i32;
        ((c.y + 1) as usize) * self.width + (c.x + n) as usize
    }

    fn cell(&self, k: usize) -> Cell {
        let n = self.n_max as i32;
        Cell::new((k % self.width) as i32 - n, (k / self.width) as i32 - 1)
    }

    /// Marks and returns the unmarked edge neighbors of `c`.
    fn fresh_neighbors(&mut self, c: Cell) -> Vec<usize> {
        let mut out = Vec::with_capacity(4);
        for nb in c.edge_neighbors() {
            let k = self.index(nb);
            if !self.marked[k] {
                self.marked[k] = true;
                out.push(k);
            }
        }
        out
    }

    fn top_level_branches(&self) -> usize {
        if self.n_max < 2 {
            0
        } else {
            self.initial.len()
        }
    }

    /// Runs the subtree that places `initial[b]` as the second cell, with the
    /// later entries of the initial untried list already consumed.
    fn run_branch(&mut self, b: usize, f: &mut impl FnMut(&[Cell])) {
        let untried: Vec<usize> = self.initial[..b].to_vec();
        let k = self.initial[b];
        self.place_and_recurse(k, untried, f);
    }

    fn place_and_recurse(&mut self, k: usize, rest: Vec<usize>, f: &mut impl FnMut(&[Cell])) {
        let c = self.cell(k);
        self.poly.push(c);
        f(&self.poly);
        if self.poly.len() < self.n_max {
            let added = self.fresh_neighbors(c);
            let mut untried = rest;
            untried.extend_from_slice(&added);
            self.grow(untried, f);
            for a in added {
                self.marked[a] = false;
            }
        }
        self.poly.pop();
    }

    fn grow(&mut self, mut untried: Vec<usize>, f: &mut impl FnMut(&[Cell])) {
        while let Some(k) = untried.pop() {
            self.place_and_recurse(k, untried.clone(), f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_polyomino_counts() {
        let mut counts = [0u64; 8];
        for_each_polyomino(8, |p| counts[p.len() - 1] += 1);
        assert_eq!(counts, [1, 2, 6, 19, 63, 216, 760, 2725]);
    }

    #[test]
    fn small_clump_counts() {
        let c = census(6).unwrap();
        assert_eq!(c.counts, vec![1, 2, 6, 19, 63, 216]);
    }

    #[test]
    fn enumerate_small_sizes() {
        assert_eq!(enumerate_clumps(1).unwrap().len(), 1);
        assert_eq!(enumerate_clumps(2).unwrap().len(), 2);
        assert_eq!(enumerate_clumps(3).unwrap().len(), 6);
    }

    #[test]
    fn canonical_forms_have_origin_as_row_major_min() {
        for s in enumerate_clumps(5).unwrap() {
            assert_eq!(s.canonical(), s);
            assert!(s.contains(Cell::ORIGIN));
        }
    }

    #[test]
    fn resource_bound_is_enforced() {
        assert_eq!(
            census_with(20, 16, false),
            Err(Error::ResourceBound {
                requested: 20,
                bound: 16
            })
        );
        assert!(census(0).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = census(3).unwrap().to_csv();
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows[0], "n,a_n,ratio,root");
        assert!(rows[1].starts_with("1,1,,"));
        assert!(rows[2].starts_with("2,2,2,"));
        assert!(rows[3].starts_with("3,6,3,"));
    }
}
