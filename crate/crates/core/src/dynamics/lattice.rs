//! Dense occupancy grid used by the simulation loop.
//!
//! Cells live in a row-major array that doubles in both directions when the
//! clump gets close to the border. Each site keeps a cover count (how many
//! occupied cells are within Chebyshev distance 1) and the event set is an
//! indexed vector with O(1) swap-remove.

use crate::cell::{Cell, CubicalSet};

const ABSENT: u32 = u32::MAX;
/// Clump cells are kept at least this far from the grid border, so that
/// every event cell has its whole ring inside the grid.
const MARGIN: i32 = 3;
const INITIAL_SIDE: usize = 64;

#[derive(Clone, Debug)]
pub struct Lattice {
    width: usize,
    height: usize,
    /// Grid coordinates of cell (0, 0).
    ox: i32,
    oy: i32,
    occ: Vec<bool>,
    cover: Vec<u8>,
    slot: Vec<u32>,
    events: Vec<u32>,
    ring: [isize; 8],
    origin: usize,
    card: usize,
}

impl Lattice {
    /// The single origin cell.
    pub fn single() -> Self {
        let mut l = Lattice::with_side(INITIAL_SIDE, INITIAL_SIDE);
        l.insert_index(l.origin);
        l
    }

    /// A lattice holding `cells`, which must contain the origin.
    pub fn from_cells(cells: &CubicalSet) -> Self {
        let mut side = INITIAL_SIDE;
        if let Some((lo, hi)) = cells.bounds() {
            let reach = [lo.x, lo.y, hi.x, hi.y].iter().map(|v| v.abs()).max().unwrap_or(0);
            while (side as i32) / 2 - MARGIN <= reach {
                side *= 2;
            }
        }
        let mut l = Lattice::with_side(side, side);
        for c in cells.iter() {
            let k = l.index(c);
            l.insert_index(k);
        }
        l
    }

    fn with_side(width: usize, height: usize) -> Self {
        let w = width as isize;
        let (ox, oy) = ((width / 2) as i32, (height / 2) as i32);
        let n = width * height;
        Lattice {
            width,
            height,
            ox,
            oy,
            occ: vec![false; n],
            cover: vec![0; n],
            slot: vec![ABSENT; n],
            events: Vec::new(),
            // E, NE, N, NW, W, SW, S, SE
            ring: [1, w + 1, w, w - 1, -1, -w - 1, -w, -w + 1],
            origin: oy as usize * width + ox as usize,
            card: 0,
        }
    }

    pub fn card(&self) -> usize {
        self.card
    }

    pub fn events(&self) -> &[u32] {
        &self.events
    }

    pub fn origin_index(&self) -> usize {
        self.origin
    }

    pub fn index(&self, c: Cell) -> usize {
        (c.y + self.oy) as usize * self.width + (c.x + self.ox) as usize
    }

    pub fn cell(&self, k: usize) -> Cell {
        Cell::new(
            (k % self.width) as i32 - self.ox,
            (k / self.width) as i32 - self.oy,
        )
    }

    pub fn is_occupied(&self, k: usize) -> bool {
        self.occ[k]
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.in_grid(c) && self.occ[self.index(c)]
    }

    fn in_grid(&self, c: Cell) -> bool {
        let (i, j) = (c.x + self.ox, c.y + self.oy);
        i >= 0 && j >= 0 && (i as usize) < self.width && (j as usize) < self.height
    }

    /// Ring occupancy of site `k` in E, NE, N, NW, W, SW, S, SE bit order.
    #[inline]
    pub fn mask(&self, k: usize) -> u8 {
        let mut m = 0u8;
        for (bit, &d) in self.ring.iter().enumerate() {
            m |= (self.occ[(k as isize + d) as usize] as u8) << bit;
        }
        m
    }

    /// Occupies site `k`. The grid may grow, which renumbers every index.
    pub fn insert_index(&mut self, k: usize) {
        debug_assert!(!self.occ[k]);
        self.occ[k] = true;
        self.card += 1;
        self.for_block(k, |l, s| {
            l.cover[s] += 1;
            if l.cover[s] == 1 && s != l.origin {
                l.slot[s] = l.events.len() as u32;
                l.events.push(s as u32);
            }
        });
        let c = self.cell(k);
        let (i, j) = (c.x + self.ox, c.y + self.oy);
        if i < MARGIN
            || j < MARGIN
            || i >= self.width as i32 - MARGIN
            || j >= self.height as i32 - MARGIN
        {
            self.grow();
        }
    }

    pub fn remove_index(&mut self, k: usize) {
        debug_assert!(self.occ[k] && k != self.origin);
        self.occ[k] = false;
        self.card -= 1;
        self.for_block(k, |l, s| {
            l.cover[s] -= 1;
            if l.cover[s] == 0 && s != l.origin {
                let at = l.slot[s] as usize;
                let last = l.events.pop().expect("nonempty event set");
                if last as usize != s {
                    l.events[at] = last;
                    l.slot[last as usize] = at as u32;
                }
                l.slot[s] = ABSENT;
            }
        });
    }

    #[inline]
    fn for_block(&mut self, k: usize, mut f: impl FnMut(&mut Self, usize)) {
        let w = self.width;
        for row in [k - w, k, k + w] {
            for s in row - 1..=row + 1 {
                f(self, s);
            }
        }
    }

    /// Doubles both sides, keeping the origin centred and the event order.
    fn grow(&mut self) {
        let mut next = Lattice::with_side(self.width * 2, self.height * 2);
        let (dx, dy) = ((next.ox - self.ox) as usize, (next.oy - self.oy) as usize);
        let (w, nw) = (self.width, next.width);
        let remap = |k: usize| (k / w + dy) * nw + k % w + dx;
        for k in 0..self.occ.len() {
            if self.occ[k] || self.cover[k] > 0 {
                let nk = remap(k);
                next.occ[nk] = self.occ[k];
                next.cover[nk] = self.cover[k];
            }
        }
        next.events = self.events.iter().map(|&k| remap(k as usize) as u32).collect();
        for (i, &k) in next.events.iter().enumerate() {
            next.slot[k as usize] = i as u32;
        }
        next.card = self.card;
        *self = next;
    }

    pub fn to_set(&self) -> CubicalSet {
        (0..self.occ.len())
            .filter(|&k| self.occ[k])
            .map(|k| self.cell(k))
            .collect()
    }

    /// Recomputes cover counts and the event set from scratch and compares.
    pub fn caches_consistent(&self) -> bool {
        let mut events: Vec<u32> = Vec::new();
        for k in 0..self.occ.len() {
            let c = self.cell(k);
            let expect = c.block3().filter(|&n| self.contains(n)).count();
            if self.cover[k] as usize != expect {
                return false;
            }
            if expect > 0 && k != self.origin {
                events.push(k as u32);
            }
        }
        let mut have = self.events.clone();
        have.sort_unstable();
        have == events
            && self.events.iter().enumerate().all(|(i, &k)| self.slot[k as usize] == i as u32)
            && self.card == self.occ.iter().filter(|&&o| o).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_has_eight_events() {
        let l = Lattice::single();
        assert_eq!(l.events().len(), 8);
        assert_eq!(l.mask(l.origin_index()), 0);
        assert!(l.caches_consistent());
    }

    #[test]
    fn mask_matches_set_mask() {
        let cells: CubicalSet = [(0, 0), (1, 0), (1, 1), (-1, 0), (0, -1)].iter().collect();
        let l = Lattice::from_cells(&cells);
        for c in Cell::new(0, 0).block3().chain(Cell::new(2, 2).block3()) {
            let k = l.index(c);
            assert_eq!(l.mask(k), crate::mask::mask_at(&cells, c).bits(), "{c}");
        }
    }

    #[test]
    fn growth_keeps_cells_and_event_order() {
        let mut l = Lattice::single();
        for x in 1..100 {
            let k = l.index(Cell::new(x, 0));
            l.insert_index(k);
        }
        assert!(l.caches_consistent());
        assert_eq!(l.card(), 100);
        assert!(l.contains(Cell::new(99, 0)));
        for x in (1..100).rev() {
            let k = l.index(Cell::new(x, 0));
            l.remove_index(k);
        }
        assert!(l.caches_consistent());
        assert_eq!(l.to_set(), std::iter::once(Cell::ORIGIN).collect());
    }
}
