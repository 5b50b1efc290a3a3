//! The eight symmetries of the square acting on lattice cells.

use crate::cell::Cell;

/// An element of the dihedral group of order 8, written as an optional
/// reflection `(x, y) -> (x, -y)` followed by `quarter_turns` counter-clockwise
/// rotations about the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub quarter_turns: u8,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        quarter_turns: 0,
        reflect: false,
    };

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for (i, s) in out.iter_mut().enumerate() {
            *s = Symmetry {
                quarter_turns: (i % 4) as u8,
                reflect: i >= 4,
            };
        }
        out
    }

    pub fn apply(self, c: Cell) -> Cell {
        let mut p = if self.reflect { Cell::new(c.x, -c.y) } else { c };
        for _ in 0..self.quarter_turns {
            p = Cell::new(-p.y, p.x);
        }
        p
    }

    pub fn inverse(self) -> Symmetry {
        if self.reflect {
            // reflections are involutions
            self
        } else {
            Symmetry {
                quarter_turns: (4 - self.quarter_turns) % 4,
                reflect: false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_undoes_apply() {
        let c = Cell::new(2, -1);
        for s in Symmetry::all() {
            assert_eq!(s.inverse().apply(s.apply(c)), c, "{s:?}");
        }
    }

    #[test]
    fn all_distinct() {
        let c = Cell::new(2, 1);
        let imgs: std::collections::HashSet<_> = Symmetry::all().iter().map(|s| s.apply(c)).collect();
        assert_eq!(imgs.len(), 8);
    }
}
