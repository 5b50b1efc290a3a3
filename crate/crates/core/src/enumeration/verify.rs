//! Exhaustive checks of the planar collapsibility results over a census.

use crate::cell::{Cell, CubicalSet};
use crate::clump::Clump;
use crate::enumeration::patterns::ConfigPattern;
use crate::format::write_cells;
use crate::table::MoveTable;
use crate::topology::is_clump;

/// A clump that violates one of the checked statements.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub cells: CubicalSet,
}

impl Counterexample {
    /// `cells-v1` text with the check name as a comment.
    pub fn to_cells_v1(&self) -> String {
        format!("# {}: {}\n{}", self.check, self.detail, write_cells(&self.cells))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CollapsibilityReport {
    /// `(n, clumps checked, smallest collapse set)` for each size `n >= 2`.
    pub per_size: Vec<(usize, usize, usize)>,
    pub counterexamples: Vec<Counterexample>,
}

impl CollapsibilityReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every clump with at least two cells has two collapsible cells, and for
/// every choice of pinned cell some other cell is collapsible.
pub fn verify_two_collapsibility(
    table: &MoveTable,
    by_size: &[Vec<CubicalSet>],
) -> CollapsibilityReport {
    let mut report = CollapsibilityReport::default();
    for (i, clumps) in by_size.iter().enumerate() {
        let n = i + 1;
        if n < 2 {
            continue;
        }
        let mut min = usize::MAX;
        for cells in clumps {
            let c = Clump::from_cells_unchecked(cells.clone());
            let cs = c.collapse_set(table);
            min = min.min(cs.len());
            if cs.len() < 2 {
                report.counterexamples.push(Counterexample {
                    check: "two-collapsible".into(),
                    detail: format!("collapse set has {} cells", cs.len()),
                    cells: cells.clone(),
                });
                continue;
            }
            for pinned in cells.iter() {
                if cs.iter().all(|&z| z == pinned) {
                    report.counterexamples.push(Counterexample {
                        check: "pinned-cell".into(),
                        detail: format!("no collapsible cell other than {pinned}"),
                        cells: cells.clone(),
                    });
                }
            }
        }
        report.per_size.push((n, clumps.len(), if clumps.is_empty() { 0 } else { min }));
    }
    report
}

#[derive(Clone, Debug, Default)]
pub struct LocalityReport {
    pub clumps: usize,
    pub collapse_checks: usize,
    pub expand_checks: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Compares the table against the clump oracle for every member cell and
/// every cell of the Chebyshev closure of each clump.
pub fn verify_locality(table: &MoveTable, clumps: &[CubicalSet]) -> LocalityReport {
    let mut report = LocalityReport::default();
    for cells in clumps {
        report.clumps += 1;
        let c = Clump::from_cells_unchecked(cells.clone());
        for z in cells.iter() {
            let mut rest = cells.clone();
            rest.remove(z);
            let global = is_clump(&rest);
            let local = table.allows(c.mask_at(z));
            report.collapse_checks += 1;
            if local != global {
                report.counterexamples.push(Counterexample {
                    check: "locality-collapse".into(),
                    detail: format!("cell {z}: table {local}, oracle {global}"),
                    cells: cells.clone(),
                });
            }
        }
        let anchor = cells.iter().next().expect("nonempty");
        for z in c.event_set(anchor).expect("member").into_iter().filter(|&z| !cells.contains(z)) {
            let mut grown = cells.clone();
            grown.insert(z);
            let global = is_clump(&grown);
            let local = table.allows(c.mask_at(z));
            report.expand_checks += 1;
            if local != global {
                report.counterexamples.push(Counterexample {
                    check: "locality-expand".into(),
                    detail: format!("cell {z}: table {local}, oracle {global}"),
                    cells: cells.clone(),
                });
            }
        }
    }
    report
}

#[derive(Clone, Debug, Default)]
pub struct ConfigLemmaReport {
    pub clumps: usize,
    pub double_deck_placements: usize,
    pub r6_clumps: usize,
    pub human_clumps: usize,
    pub counterexamples: Vec<Counterexample>,
}

/// Checks, for every clump:
/// (a) each double-deck placement has a collapsible cell strictly above its
///     base row, in the deck's own frame;
/// (b) clumps of two or more cells without a 2-by-3 rectangle (either pose) are 2-collapsible;
/// (c) clumps with one are 2-collapsible or contain a Human.
pub fn verify_config_lemmas(table: &MoveTable, clumps: &[CubicalSet]) -> ConfigLemmaReport {
    let deck = ConfigPattern::double_deck();
    let rect = ConfigPattern::r6().with_closure(true);
    let human = ConfigPattern::human();
    let mut report = ConfigLemmaReport::default();
    for cells in clumps {
        report.clumps += 1;
        let c = Clump::from_cells_unchecked(cells.clone());
        let cs = c.collapse_set(table);
        // a single square has nothing to pair with
        let two = cells.len() < 2 || cs.len() >= 2;

        for p in deck.detect(cells) {
            report.double_deck_placements += 1;
            if !cs.iter().any(|&z| p.to_frame(z).y >= 1) {
                report.counterexamples.push(Counterexample {
                    check: "double-deck".into(),
                    detail: format!("no collapsible cell above deck at {}", p.offset),
                    cells: cells.clone(),
                });
            }
        }

        let has_rect = !rect.detect(cells).is_empty();
        if !has_rect && !two {
            report.counterexamples.push(Counterexample {
                check: "no-rectangle".into(),
                detail: "no 2-by-3 rectangle but not 2-collapsible".into(),
                cells: cells.clone(),
            });
        }
        if has_rect {
            report.r6_clumps += 1;
            let has_human = !human.detect(cells).is_empty();
            if has_human {
                report.human_clumps += 1;
            }
            if !two && !has_human {
                report.counterexamples.push(Counterexample {
                    check: "rectangle".into(),
                    detail: "has a 2-by-3 rectangle, not 2-collapsible and no Human".into(),
                    cells: cells.clone(),
                });
            }
        }
    }
    report
}

/// The straight line of `n` cells starting at the origin.
pub fn line_clump(n: usize) -> CubicalSet {
    (0..n as i32).map(|x| Cell::new(x, 0)).collect()
}
