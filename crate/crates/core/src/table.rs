//! The precomputed local move predicate.
//!
//! A single cell can be removed from (or added to) a clump exactly when its
//! 3x3 neighborhood, taken with and without the focal cell, are both clumps.
//! Since that only depends on the eight ring cells, the answer for every
//! configuration fits in a 256-entry table.

use std::fmt::Write as _;

use crate::cell::Cell;
use crate::error::{Error, Result};
use crate::mask::NeighborMask;
use crate::topology::is_clump;

#[derive(Clone, PartialEq, Eq)]
pub struct MoveTable {
    allowed: [bool; 256],
}

impl std::fmt::Debug for MoveTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MoveTable({} allowed)", self.count_allowed())
    }
}

impl MoveTable {
    /// Builds the table from the from-definition clump oracle.
    pub fn build() -> Self {
        let mut allowed = [false; 256];
        for (m, slot) in allowed.iter_mut().enumerate() {
            *slot = neighborhood_is_collapsible(NeighborMask(m as u8));
        }
        MoveTable { allowed }
    }

    pub fn from_array(allowed: [bool; 256]) -> Self {
        MoveTable { allowed }
    }

    #[inline]
    pub fn allows(&self, m: NeighborMask) -> bool {
        self.allowed[m.0 as usize]
    }

    #[inline]
    pub fn allows_bits(&self, bits: u8) -> bool {
        self.allowed[bits as usize]
    }

    pub fn as_array(&self) -> &[bool; 256] {
        &self.allowed
    }

    pub fn count_allowed(&self) -> usize {
        self.allowed.iter().filter(|&&a| a).count()
    }

    /// Returns a copy with one entry inverted; used for mutation checks.
    pub fn with_flipped(&self, mask: u8) -> MoveTable {
        let mut t = self.clone();
        t.allowed[mask as usize] = !t.allowed[mask as usize];
        t
    }

    /// 256 lines of `mask allowed`, mask in decimal.
    pub fn dump(&self) -> String {
        let mut s = String::with_capacity(256 * 10);
        for (m, a) in self.allowed.iter().enumerate() {
            writeln!(s, "{m} {a}").unwrap();
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<MoveTable> {
        let mut allowed = [false; 256];
        let mut seen = [false; 256];
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: ln + 1,
                msg: msg.to_string(),
            };
            let mut parts = line.split_whitespace();
            let m: u8 = parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| err("expected mask in 0..=255"))?;
            let a: bool = parts
                .next()
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| err("expected true/false"))?;
            if parts.next().is_some() {
                return Err(err("trailing tokens"));
            }
            allowed[m as usize] = a;
            seen[m as usize] = true;
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Parse {
                line: 0,
                msg: "table dump does not cover all 256 masks".into(),
            });
        }
        Ok(MoveTable { allowed })
    }
}

impl Default for MoveTable {
    fn default() -> Self {
        Self::build()
    }
}

/// `ring(m) ∪ {focal}` and `ring(m)` are both clumps.
pub fn neighborhood_is_collapsible(m: NeighborMask) -> bool {
    let ring = m.ring_set();
    let mut with_focal = ring.clone();
    with_focal.insert(Cell::ORIGIN);
    is_clump(&with_focal) && is_clump(&ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::Symmetry;

    #[test]
    fn named_entries() {
        let t = MoveTable::build();
        assert!(t.allows_bits(NeighborMask::N));
        assert!(!t.allows_bits(NeighborMask::N | NeighborMask::S));
        assert!(!t.allows_bits(255));
        assert!(!t.allows_bits(NeighborMask::NE));
        assert!(!t.allows_bits(0));
    }

    #[test]
    fn dihedral_symmetry() {
        let t = MoveTable::build();
        for m in 0..=255u8 {
            for s in Symmetry::all() {
                let img = NeighborMask(m).transformed(s);
                assert_eq!(t.allows_bits(m), t.allows(img), "mask {m} under {s:?}");
            }
        }
    }

    #[test]
    fn dump_round_trip() {
        let t = MoveTable::build();
        let text = t.dump();
        assert_eq!(text.lines().count(), 256);
        assert_eq!(text.lines().next(), Some("0 false"));
        assert_eq!(MoveTable::parse_dump(&text).unwrap(), t);
    }

    #[test]
    fn incomplete_dump_is_rejected() {
        assert!(MoveTable::parse_dump("0 false\n").is_err());
    }
}
