//! 8-bit occupancy masks of the Chebyshev ring around a focal cell.

use crate::cell::{Cell, CubicalSet};
use crate::symmetry::Symmetry;

/// Ring offsets in bit order: E, NE, N, NW, W, SW, S, SE.
pub const RING_OFFSETS: [Cell; 8] = [
    Cell::new(1, 0),
    Cell::new(1, 1),
    Cell::new(0, 1),
    Cell::new(-1, 1),
    Cell::new(-1, 0),
    Cell::new(-1, -1),
    Cell::new(0, -1),
    Cell::new(1, -1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NeighborMask(pub u8);

impl NeighborMask {
    pub const E: u8 = 1 << 0;
    pub const NE: u8 = 1 << 1;
    pub const N: u8 = 1 << 2;
    pub const NW: u8 = 1 << 3;
    pub const W: u8 = 1 << 4;
    pub const SW: u8 = 1 << 5;
    pub const S: u8 = 1 << 6;
    pub const SE: u8 = 1 << 7;

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_set(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Ring cells selected by this mask, relative to a focal cell at the origin.
    pub fn ring_cells(self) -> impl Iterator<Item = Cell> {
        (0..8)
            .filter(move |&i| self.is_set(i))
            .map(|i| RING_OFFSETS[i])
    }

    pub fn ring_set(self) -> CubicalSet {
        self.ring_cells().collect()
    }

    /// Image of the mask when the square symmetry `s` acts on the ring.
    pub fn transformed(self, s: Symmetry) -> NeighborMask {
        let mut out = 0u8;
        for (i, &off) in RING_OFFSETS.iter().enumerate() {
            if self.is_set(i) {
                let img = s.apply(off);
                let j = ring_index(img).expect("symmetries preserve the ring");
                out |= 1 << j;
            }
        }
        NeighborMask(out)
    }
}

/// Bit index of a ring offset, `None` for the focal cell or anything farther.
pub fn ring_index(offset: Cell) -> Option<usize> {
    RING_OFFSETS.iter().position(|&r| r == offset)
}

/// Occupancy of the eight ring cells of `z`. Membership of `z` itself is not encoded.
pub fn mask_at(set: &CubicalSet, z: Cell) -> NeighborMask {
    mask_with(|c| set.contains(c), z)
}

pub fn mask_with(mut occupied: impl FnMut(Cell) -> bool, z: Cell) -> NeighborMask {
    let mut m = 0u8;
    for (i, &d) in RING_OFFSETS.iter().enumerate() {
        if occupied(z + d) {
            m |= 1 << i;
        }
    }
    NeighborMask(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_cell_has_empty_mask() {
        let s: CubicalSet = [(0, 0)].iter().collect();
        assert_eq!(mask_at(&s, Cell::ORIGIN), NeighborMask(0));
    }

    #[test]
    fn single_north_neighbor() {
        let s: CubicalSet = [(0, 0), (0, 1)].iter().collect();
        assert_eq!(mask_at(&s, Cell::ORIGIN), NeighborMask(NeighborMask::N));
    }

    #[test]
    fn full_block_is_255() {
        let s: CubicalSet = Cell::ORIGIN.block3().collect();
        assert_eq!(mask_at(&s, Cell::ORIGIN), NeighborMask(255));
    }

    #[test]
    fn quarter_turn_shifts_bits_by_two() {
        let r = Symmetry {
            quarter_turns: 1,
            reflect: false,
        };
        assert_eq!(NeighborMask(NeighborMask::E).transformed(r), NeighborMask(NeighborMask::N));
        assert_eq!(NeighborMask(NeighborMask::SE).transformed(r), NeighborMask(NeighborMask::NE));
    }
}
