//! Validated clumps with incrementally maintained caches.

use std::collections::{BTreeMap, HashMap};

use crate::cell::{Cell, CubicalSet};
use crate::error::{Error, Result};
use crate::mask::{mask_at, NeighborMask};
use crate::table::MoveTable;
use crate::topology::is_clump;

/// A lattice vertex `(i, j)` standing for the corner point `(i - 1/2, j - 1/2)`.
pub type Corner = (i32, i32);

/// A regular cubical set with contractible realization.
///
/// Alongside the cells it keeps, for every cell within Chebyshev distance 1 of
/// the clump, the number of clump cells that cover it. The keys of that map
/// are the event set (before removing the pinned cell). The perimeter is also
/// cached. Both are updated in O(1) per move.
#[derive(Clone, Debug)]
pub struct Clump {
    cells: CubicalSet,
    cover: HashMap<Cell, u8>,
    perimeter: usize,
}

impl PartialEq for Clump {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for Clump {}

impl Clump {
    pub fn new(cells: CubicalSet) -> Result<Self> {
        if !is_clump(&cells) {
            return Err(Error::NotAClump);
        }
        Ok(Self::from_cells_unchecked(cells))
    }

    pub fn single(c: Cell) -> Self {
        Self::from_cells_unchecked(std::iter::once(c).collect())
    }

    /// Builds the caches without re-running the clump oracle.
    pub fn from_cells_unchecked(cells: CubicalSet) -> Self {
        let mut cover = HashMap::with_capacity(cells.len() * 4);
        for c in cells.iter() {
            for n in c.block3() {
                *cover.entry(n).or_insert(0) += 1;
            }
        }
        let perimeter = cells.perimeter();
        Clump {
            cells,
            cover,
            perimeter,
        }
    }

    pub fn cells(&self) -> &CubicalSet {
        &self.cells
    }

    pub fn into_cells(self) -> CubicalSet {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(c)
    }

    pub fn perimeter(&self) -> usize {
        self.perimeter
    }

    pub fn mask_at(&self, z: Cell) -> NeighborMask {
        mask_at(&self.cells, z)
    }

    /// Local collapse test through a member cell.
    pub fn can_collapse(&self, table: &MoveTable, z: Cell) -> Result<bool> {
        if !self.contains(z) {
            return Err(Error::NotMember(z));
        }
        Ok(table.allows(self.mask_at(z)))
    }

    /// Local expansion test through a non-member cell. Same table as collapse.
    pub fn can_expand(&self, table: &MoveTable, z: Cell) -> Result<bool> {
        if self.contains(z) {
            return Err(Error::AlreadyMember(z));
        }
        Ok(table.allows(self.mask_at(z)))
    }

    /// Member cells whose removal leaves a clump, in `(x, y)` order.
    /// Empty for a single cell: collapse needs at least two cells.
    pub fn collapse_set(&self, table: &MoveTable) -> Vec<Cell> {
        if self.len() < 2 {
            return Vec::new();
        }
        self.cells
            .iter()
            .filter(|&z| table.allows(self.mask_at(z)))
            .collect()
    }

    /// All cells within Chebyshev distance 1 of the clump, `origin` excluded,
    /// in `(x, y)` order.
    pub fn event_set(&self, origin: Cell) -> Result<Vec<Cell>> {
        if !self.contains(origin) {
            return Err(Error::NotMember(origin));
        }
        let mut out: Vec<Cell> = self.cover.keys().copied().filter(|&c| c != origin).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Size of the Chebyshev-1 closure, pinned cell included.
    pub fn closure_len(&self) -> usize {
        self.cover.len()
    }

    /// Non-member cells of the closure whose insertion keeps a clump.
    pub fn expansion_candidates(&self, table: &MoveTable) -> Vec<Cell> {
        let mut out: Vec<Cell> = self
            .cover
            .keys()
            .copied()
            .filter(|&c| !self.contains(c) && table.allows(self.mask_at(c)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn apply_collapse(&mut self, table: &MoveTable, z: Cell) -> Result<()> {
        if !self.can_collapse(table, z)? || self.len() < 2 {
            return Err(Error::MoveNotAllowed(z));
        }
        self.remove_unchecked(z);
        Ok(())
    }

    pub fn apply_expand(&mut self, table: &MoveTable, z: Cell) -> Result<()> {
        if !self.can_expand(table, z)? {
            return Err(Error::MoveNotAllowed(z));
        }
        self.insert_unchecked(z);
        Ok(())
    }

    fn insert_unchecked(&mut self, z: Cell) {
        let k = self.cells.count_edge_neighbors(z);
        self.perimeter = self.perimeter + 4 - 2 * k;
        self.cells.insert(z);
        for n in z.block3() {
            *self.cover.entry(n).or_insert(0) += 1;
        }
    }

    fn remove_unchecked(&mut self, z: Cell) {
        self.cells.remove(z);
        let k = self.cells.count_edge_neighbors(z);
        self.perimeter = self.perimeter + 2 * k - 4;
        for n in z.block3() {
            let slot = self.cover.get_mut(&n).expect("cover count present");
            *slot -= 1;
            if *slot == 0 {
                self.cover.remove(&n);
            }
        }
    }

    /// True iff every cache equals its from-scratch recomputation.
    pub fn caches_consistent(&self) -> bool {
        let fresh = Clump::from_cells_unchecked(self.cells.clone());
        fresh.cover == self.cover && fresh.perimeter == self.perimeter
    }

    /// Outer boundary traced counter-clockwise as a closed circuit of corners.
    /// The first corner is repeated at the end; it is the lexicographically
    /// smallest corner on the boundary.
    pub fn boundary_circuit(&self) -> Vec<Corner> {
        boundary_circuit(&self.cells)
    }
}

/// Counter-clockwise boundary circuit of a cell set whose boundary is a single
/// simple closed curve (as for any clump).
pub fn boundary_circuit(cells: &CubicalSet) -> Vec<Corner> {
    let mut next: BTreeMap<Corner, Corner> = BTreeMap::new();
    for c in cells.iter() {
        let (x, y) = (c.x, c.y);
        if !cells.contains(Cell::new(x, y - 1)) {
            next.insert((x, y), (x + 1, y));
        }
        if !cells.contains(Cell::new(x + 1, y)) {
            next.insert((x + 1, y), (x + 1, y + 1));
        }
        if !cells.contains(Cell::new(x, y + 1)) {
            next.insert((x + 1, y + 1), (x, y + 1));
        }
        if !cells.contains(Cell::new(x - 1, y)) {
            next.insert((x, y + 1), (x, y));
        }
    }
    let Some((&start, _)) = next.iter().next() else {
        return Vec::new();
    };
    let mut circuit = vec![start];
    let mut cur = start;
    loop {
        cur = next[&cur];
        circuit.push(cur);
        if cur == start || circuit.len() > next.len() + 1 {
            break;
        }
    }
    circuit
}

/// Signed area enclosed by a closed corner circuit (positive when counter-clockwise).
pub fn shoelace_area(circuit: &[Corner]) -> f64 {
    let twice: i64 = circuit
        .windows(2)
        .map(|w| w[0].0 as i64 * w[1].1 as i64 - w[1].0 as i64 * w[0].1 as i64)
        .sum();
    twice as f64 / 2.0
}

/// Checks the self-avoiding circuit conditions: closed, unit steps, and no
/// repeated corner except the closing one.
pub fn is_self_avoiding_circuit(circuit: &[Corner]) -> bool {
    if circuit.len() < 5 || circuit.first() != circuit.last() {
        return false;
    }
    let unit = circuit
        .windows(2)
        .all(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() == 1);
    let body = &circuit[..circuit.len() - 1];
    let distinct: std::collections::HashSet<_> = body.iter().collect();
    unit && distinct.len() == body.len()
}
