use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Sub};

/// Integer center of a unit square `[x-1/2, x+1/2] x [y-1/2, y+1/2]`.
///
/// The derived ordering is lexicographic by `(x, y)`; this is the order used
/// when cells are written out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

/// Offsets of the four edge neighbors (E, N, W, S).
pub const EDGE_OFFSETS: [Cell; 4] = [
    Cell::new(1, 0),
    Cell::new(0, 1),
    Cell::new(-1, 0),
    Cell::new(0, -1),
];

impl Cell {
    pub const ORIGIN: Cell = Cell::new(0, 0);

    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn l1(self, other: Cell) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn linf(self, other: Cell) -> u32 {
        self.x.abs_diff(other.x).max(self.y.abs_diff(other.y))
    }

    pub fn is_edge_adjacent(self, other: Cell) -> bool {
        self.l1(other) == 1
    }

    pub fn is_chebyshev_adjacent(self, other: Cell) -> bool {
        self.linf(other) == 1
    }

    pub fn edge_neighbors(self) -> impl Iterator<Item = Cell> {
        EDGE_OFFSETS.into_iter().map(move |d| self + d)
    }

    /// The 3x3 block centered here, focal cell included.
    pub fn block3(self) -> impl Iterator<Item = Cell> {
        (-1..=1).flat_map(move |dy| (-1..=1).map(move |dx| Cell::new(self.x + dx, self.y + dy)))
    }

    /// Key used for canonical placement: row-major, `y` first.
    pub fn row_major_key(self) -> (i32, i32) {
        (self.y, self.x)
    }
}

impl Add for Cell {
    type Output = Cell;
    fn add(self, o: Cell) -> Cell {
        Cell::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Cell {
    type Output = Cell;
    fn sub(self, o: Cell) -> Cell {
        Cell::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i32, i32)> for Cell {
    fn from((x, y): (i32, i32)) -> Self {
        Cell::new(x, y)
    }
}

/// A finite set of cells with no validity constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubicalSet {
    cells: BTreeSet<Cell>,
}

impl CubicalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    pub fn insert(&mut self, c: Cell) -> bool {
        self.cells.insert(c)
    }

    pub fn remove(&mut self, c: Cell) -> bool {
        self.cells.remove(&c)
    }

    /// Cells in `(x, y)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Cell> + Clone + '_ {
        self.cells.iter().copied()
    }

    /// Inclusive bounding box `(min, max)`, `None` when empty.
    pub fn bounds(&self) -> Option<(Cell, Cell)> {
        let mut it = self.cells.iter();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi.x = hi.x.max(c.x);
            hi.y = hi.y.max(c.y);
        }
        Some((lo, hi))
    }

    pub fn translated(&self, by: Cell) -> CubicalSet {
        self.iter().map(|c| c + by).collect()
    }

    /// Translate so that the row-major minimum cell (smallest `y`, then `x`)
    /// sits at the origin.
    pub fn canonical(&self) -> CubicalSet {
        match self.iter().min_by_key(|c| c.row_major_key()) {
            Some(m) => self.translated(Cell::ORIGIN - m),
            None => CubicalSet::new(),
        }
    }

    pub fn count_edge_neighbors(&self, c: Cell) -> usize {
        c.edge_neighbors().filter(|&n| self.contains(n)).count()
    }

    /// Number of unit edges separating a member cell from a non-member.
    pub fn perimeter(&self) -> usize {
        self.iter()
            .map(|c| 4 - self.count_edge_neighbors(c))
            .sum()
    }
}

impl FromIterator<Cell> for CubicalSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        CubicalSet {
            cells: iter.into_iter().collect(),
        }
    }
}

impl<'a> FromIterator<&'a (i32, i32)> for CubicalSet {
    fn from_iter<I: IntoIterator<Item = &'a (i32, i32)>>(iter: I) -> Self {
        iter.into_iter().map(|&p| Cell::from(p)).collect()
    }
}

impl Extend<Cell> for CubicalSet {
    fn extend<I: IntoIterator<Item = Cell>>(&mut self, iter: I) {
        self.cells.extend(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency() {
        let o = Cell::ORIGIN;
        assert!(o.is_edge_adjacent(Cell::new(1, 0)));
        assert!(!o.is_edge_adjacent(Cell::new(1, 1)));
        assert!(o.is_chebyshev_adjacent(Cell::new(1, 1)));
        assert!(!o.is_chebyshev_adjacent(Cell::new(2, 0)));
    }

    #[test]
    fn dedup_and_cardinality() {
        let s: CubicalSet = [(0, 0), (0, 0), (1, 0)].iter().collect();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn canonical_is_row_major_min_at_origin() {
        let s: CubicalSet = [(5, 3), (4, 4), (5, 4)].iter().collect();
        let c = s.canonical();
        let expect: CubicalSet = [(0, 0), (-1, 1), (0, 1)].iter().collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn perimeter_of_domino() {
        let s: CubicalSet = [(0, 0), (1, 0)].iter().collect();
        assert_eq!(s.perimeter(), 6);
    }
}
