//! Fixed local configurations and their detection inside clumps.

use std::collections::BTreeSet;

use crate::cell::{Cell, CubicalSet};
use crate::error::Result;
use crate::format::parse_pattern;
use crate::symmetry::Symmetry;

const R6_FILE: &str = include_str!("../../data/r6.cells");
const DOUBLE_DECK_FILE: &str = include_str!("../../data/double_deck.cells");
const HUMAN_FILE: &str = include_str!("../../data/human.cells");

/// Cells that must be present and cells that must be absent, relative to the
/// pattern origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigPattern {
    pub name: String,
    pub occupied: CubicalSet,
    pub forbidden: CubicalSet,
    /// Also match every rotation and reflection.
    pub closure: bool,
}

/// One match of a pattern: the symmetry and offset mapping pattern
/// coordinates `p` to lattice cells `symmetry.apply(p) + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    pub symmetry: Symmetry,
    pub offset: Cell,
    pub cells: CubicalSet,
}

impl Placement {
    /// Pattern-frame coordinates of a lattice cell.
    pub fn to_frame(&self, c: Cell) -> Cell {
        self.symmetry.inverse().apply(c - self.offset)
    }
}

impl ConfigPattern {
    pub fn from_text(name: &str, text: &str, closure: bool) -> Result<Self> {
        let (occupied, forbidden) = parse_pattern(text)?;
        Ok(ConfigPattern {
            name: name.to_string(),
            occupied,
            forbidden,
            closure,
        })
    }

    /// The 2-by-3 rectangle in its wide pose. Without closure only this pose
    /// matches; the tall pose is [`ConfigPattern::r6_transposed`].
    pub fn r6() -> Self {
        Self::from_text("R6", R6_FILE, false).expect("bundled pattern")
    }

    pub fn r6_transposed(&self) -> Self {
        let quarter = Symmetry {
            quarter_turns: 1,
            reflect: false,
        };
        ConfigPattern {
            name: format!("{}^T", self.name),
            occupied: self.occupied.iter().map(|c| quarter.apply(c)).collect(),
            forbidden: self.forbidden.iter().map(|c| quarter.apply(c)).collect(),
            closure: self.closure,
        }
    }

    pub fn double_deck() -> Self {
        Self::from_text("double-deck", DOUBLE_DECK_FILE, true).expect("bundled pattern")
    }

    pub fn human() -> Self {
        Self::from_text("Human", HUMAN_FILE, true).expect("bundled pattern")
    }

    pub fn with_closure(mut self, closure: bool) -> Self {
        self.closure = closure;
        self
    }

    /// Every distinct placement inside `set`. Placements whose occupied and
    /// forbidden images coincide are reported once.
    pub fn detect(&self, set: &CubicalSet) -> Vec<Placement> {
        let syms: Vec<Symmetry> = if self.closure {
            Symmetry::all().to_vec()
        } else {
            vec![Symmetry::IDENTITY]
        };
        let Some(anchor) = self.occupied.iter().next() else {
            return Vec::new();
        };
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in syms {
            let occ: Vec<Cell> = self.occupied.iter().map(|c| s.apply(c)).collect();
            let forb: Vec<Cell> = self.forbidden.iter().map(|c| s.apply(c)).collect();
            let a = s.apply(anchor);
            for c in set.iter() {
                let offset = c - a;
                if occ.iter().all(|&p| set.contains(p + offset))
                    && forb.iter().all(|&p| !set.contains(p + offset))
                {
                    let cells: CubicalSet = occ.iter().map(|&p| p + offset).collect();
                    let forb_img: CubicalSet = forb.iter().map(|&p| p + offset).collect();
                    if seen.insert((cells.clone(), forb_img)) {
                        out.push(Placement {
                            symmetry: s,
                            offset,
                            cells,
                        });
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_patterns_parse() {
        assert_eq!(ConfigPattern::r6().occupied.len(), 6);
        assert_eq!(ConfigPattern::double_deck().occupied.len(), 6);
        let h = ConfigPattern::human();
        assert_eq!(h.occupied.len(), 12);
        assert_eq!(h.forbidden.len(), 3);
    }

    #[test]
    fn r6_in_rectangle() {
        let r6 = ConfigPattern::r6();
        let rect = r6.occupied.translated(Cell::new(7, -3));
        assert_eq!(r6.detect(&rect).len(), 1);
        assert_eq!(r6.r6_transposed().detect(&rect).len(), 0);
        let closed = r6.clone().with_closure(true);
        assert_eq!(closed.detect(&rect).len(), 1);
    }

    #[test]
    fn r6_absent_from_lines() {
        let line: CubicalSet = (0..12).map(|x| Cell::new(x, 0)).collect();
        assert!(ConfigPattern::r6().with_closure(true).detect(&line).is_empty());
    }

    #[test]
    fn double_deck_in_itself() {
        let dd = ConfigPattern::double_deck();
        let p = dd.detect(&dd.occupied);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].to_frame(Cell::new(0, 1)).y, 1);
    }

    #[test]
    fn forbidden_cells_block_a_match() {
        let h = ConfigPattern::human();
        let mut s = h.occupied.clone();
        assert_eq!(h.detect(&s).len(), 1);
        s.insert(Cell::new(0, -2));
        assert!(h.detect(&s).is_empty());
    }
}
