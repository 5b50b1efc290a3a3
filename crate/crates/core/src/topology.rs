//! From-definition checks for regularity and contractibility of planar cubical sets.
//!
//! These are the slow oracles. They build a small occupancy bitmap over the
//! bounding box of the set and are used to construct the move table and to
//! cross-check every fast path; they never run inside the simulation loop.

use std::collections::VecDeque;

use crate::cell::{Cell, CubicalSet};

/// Dense occupancy bitmap over the bounding box of a set, padded by `pad` cells.
pub(crate) struct Bitmap {
    width: usize,
    height: usize,
    occ: Vec<bool>,
}

impl Bitmap {
    pub(crate) fn new(set: &CubicalSet, pad: i32) -> Option<Self> {
        Self::from_cells(set.iter(), pad)
    }

    pub(crate) fn from_cells(cells: impl Iterator<Item = Cell> + Clone, pad: i32) -> Option<Self> {
        let mut it = cells.clone();
        let first = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for c in it {
            lo = Cell::new(lo.x.min(c.x), lo.y.min(c.y));
            hi = Cell::new(hi.x.max(c.x), hi.y.max(c.y));
        }
        let origin = Cell::new(lo.x - pad, lo.y - pad);
        let width = (hi.x - lo.x + 1 + 2 * pad) as usize;
        let height = (hi.y - lo.y + 1 + 2 * pad) as usize;
        let mut occ = vec![false; width * height];
        for c in cells {
            let (i, j) = ((c.x - origin.x) as usize, (c.y - origin.y) as usize);
            occ[j * width + i] = true;
        }
        Some(Bitmap {
            width,
            height,
            occ,
        })
    }

    fn at(&self, i: usize, j: usize) -> bool {
        self.occ[j * self.width + i]
    }

    /// Number of 4-connected components among cells whose occupancy equals `value`.
    fn components(&self, value: bool) -> usize {
        let mut seen = vec![false; self.occ.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.occ.len() {
            if self.occ[start] != value || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(k) = queue.pop_front() {
                let (i, j) = (k % self.width, k / self.width);
                let mut visit = |ni: usize, nj: usize| {
                    let nk = nj * self.width + ni;
                    if self.occ[nk] == value && !seen[nk] {
                        seen[nk] = true;
                        queue.push_back(nk);
                    }
                };
                if i + 1 < self.width {
                    visit(i + 1, j);
                }
                if i > 0 {
                    visit(i - 1, j);
                }
                if j + 1 < self.height {
                    visit(i, j + 1);
                }
                if j > 0 {
                    visit(i, j - 1);
                }
            }
        }
        count
    }

    /// True iff some lattice vertex sees exactly one diagonal pair of occupied cells.
    fn has_diagonal_pinch(&self) -> bool {
        for j in 0..self.height.saturating_sub(1) {
            for i in 0..self.width.saturating_sub(1) {
                let (a, b, c, d) = (
                    self.at(i, j),
                    self.at(i + 1, j),
                    self.at(i, j + 1),
                    self.at(i + 1, j + 1),
                );
                if vertex_is_irregular([a, b, d, c]) {
                    return true;
                }
            }
        }
        false
    }

    fn is_clump(&self) -> bool {
        !self.has_diagonal_pinch() && self.components(true) == 1 && self.components(false) == 1
    }
}

/// Irregularity test at one lattice vertex. `quadrants` lists the occupancy of
/// the four incident cells in cyclic order around the vertex (SW, SE, NE, NW).
///
/// The only planar pattern whose punctured neighborhood is not contractible is
/// two opposite quadrants occupied with the other two empty.
pub fn vertex_is_irregular(quadrants: [bool; 4]) -> bool {
    let [a, b, c, d] = quadrants;
    (a && c && !b && !d) || (b && d && !a && !c)
}

/// Regular iff no lattice vertex carries an isolated diagonal pair.
pub fn is_regular(set: &CubicalSet) -> bool {
    match Bitmap::new(set, 1) {
        Some(bm) => !bm.has_diagonal_pinch(),
        None => true,
    }
}

/// Edge-connected with a single connected complement inside the 1-padded
/// bounding box. Callers are expected to have checked regularity.
pub fn is_contractible(set: &CubicalSet) -> bool {
    let Some(bm) = Bitmap::new(set, 1) else {
        return false;
    };
    bm.components(true) == 1 && bm.components(false) == 1
}

/// Nonempty, regular and contractible.
pub fn is_clump(set: &CubicalSet) -> bool {
    Bitmap::new(set, 1).is_some_and(|bm| bm.is_clump())
}

/// [`is_clump`] over a slice of distinct cells.
pub fn is_clump_cells(cells: &[Cell]) -> bool {
    Bitmap::from_cells(cells.iter().copied(), 1).is_some_and(|bm| bm.is_clump())
}

/// Euler characteristic `V - E + F` of the closed realization (vertices and
/// edges of the squares counted once each).
pub fn euler_characteristic(set: &CubicalSet) -> i64 {
    use std::collections::HashSet;
    let mut verts = HashSet::new();
    let mut edges = HashSet::new();
    for c in set.iter() {
        // corner (i, j) denotes the point (i - 1/2, j - 1/2)
        let corners = [
            (c.x, c.y),
            (c.x + 1, c.y),
            (c.x + 1, c.y + 1),
            (c.x, c.y + 1),
        ];
        for k in 0..4 {
            let (p, q) = (corners[k], corners[(k + 1) % 4]);
            verts.insert(p);
            edges.insert(if p < q { (p, q) } else { (q, p) });
        }
    }
    verts.len() as i64 - edges.len() as i64 + set.len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cells: &[(i32, i32)]) -> CubicalSet {
        cells.iter().collect()
    }

    fn ring8() -> CubicalSet {
        Cell::ORIGIN.block3().filter(|&c| c != Cell::ORIGIN).collect()
    }

    /// Counts connected components of the punctured neighborhood of a vertex.
    /// The small punctured disk splits into eight sectors: four open quadrants
    /// and the four half-axes between them. A half-axis belongs to the set when
    /// either adjacent quadrant does.
    fn punctured_components(q: [bool; 4]) -> usize {
        let mut sectors = [false; 8];
        for k in 0..4 {
            sectors[2 * k] = q[k];
            sectors[2 * k + 1] = q[k] || q[(k + 1) % 4];
        }
        if sectors.iter().all(|&s| s) {
            return 1;
        }
        // count maximal runs on the cycle
        (0..8).filter(|&i| sectors[i] && !sectors[(i + 7) % 8]).count()
    }

    #[test]
    fn diagonal_pair_is_the_only_irregular_vertex_pattern() {
        for bits in 0u8..16 {
            let q = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0];
            let occupied = q.iter().filter(|&&b| b).count();
            // A point of the set is regular iff interior (all four) or its
            // punctured neighborhood is a single arc (contractible).
            let irregular_by_topology = occupied > 0 && occupied < 4 && punctured_components(q) != 1;
            assert_eq!(vertex_is_irregular(q), irregular_by_topology, "pattern {bits:04b}");
        }
    }

    #[test]
    fn regularity_examples() {
        assert!(!is_regular(&set(&[(0, 0), (1, 1)])));
        assert!(is_regular(&set(&[(0, 0), (1, 0)])));
        assert!(is_regular(&set(&[(0, 0), (1, 1), (1, 0)])));
    }

    #[test]
    fn contractibility_examples() {
        assert!(is_contractible(&set(&[(0, 0)])));
        assert!(!is_contractible(&ring8()));
        assert!(!is_contractible(&set(&[(0, 0), (0, 2)])));
    }

    #[test]
    fn clump_examples() {
        assert!(is_clump(&set(&[(0, 0), (1, 0), (0, 1), (1, 1)])));
        assert!(!is_clump(&set(&[(0, 0), (1, 1)])));
        let r6 = set(&[(-1, 1), (0, 1), (1, 1), (-1, 0), (0, 0), (1, 0)]);
        assert!(is_clump(&r6));
        assert!(!is_clump(&CubicalSet::new()));
    }

    #[test]
    fn euler_characteristic_matches_topology() {
        assert_eq!(euler_characteristic(&set(&[(0, 0)])), 1);
        assert_eq!(euler_characteristic(&ring8()), 0);
        assert_eq!(euler_characteristic(&set(&[(0, 0), (0, 2)])), 2);
    }
}
