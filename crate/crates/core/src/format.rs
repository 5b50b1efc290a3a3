//! The `cells-v1` text format.
//!
//! ```text
//! clump d=2 n=3
//! 0 0
//! 0 1
//! 1 0
//! ```
//!
//! One `x y` pair per line in `(x, y)` lexicographic order after the header.
//! Pattern files may add `!x y` lines for cells that must be empty. Lines
//! starting with `#` are comments.

use std::fmt::Write as _;

use crate::cell::{Cell, CubicalSet};
use crate::error::{Error, Result};

pub const HEADER_PREFIX: &str = "clump d=2 n=";

pub fn write_cells(set: &CubicalSet) -> String {
    write_pattern(set, &CubicalSet::new())
}

pub fn write_pattern(occupied: &CubicalSet, forbidden: &CubicalSet) -> String {
    let mut s = String::new();
    writeln!(s, "{HEADER_PREFIX}{}", occupied.len()).unwrap();
    for c in occupied.iter() {
        writeln!(s, "{} {}", c.x, c.y).unwrap();
    }
    for c in forbidden.iter() {
        writeln!(s, "!{} {}", c.x, c.y).unwrap();
    }
    s
}

pub fn parse_cells(text: &str) -> Result<CubicalSet> {
    let (occ, forb) = parse_pattern(text)?;
    if !forb.is_empty() {
        return Err(Error::Parse {
            line: 0,
            msg: "forbidden-cell lines are only valid in pattern files".into(),
        });
    }
    Ok(occ)
}

/// Returns `(occupied, forbidden)`.
pub fn parse_pattern(text: &str) -> Result<(CubicalSet, CubicalSet)> {
    let mut occupied = CubicalSet::new();
    let mut forbidden = CubicalSet::new();
    let mut declared: Option<usize> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        let err = |msg: String| Error::Parse { line: lineno, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if declared.is_none() {
            let n = line
                .strip_prefix(HEADER_PREFIX)
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| err(format!("expected header `{HEADER_PREFIX}<card>`")))?;
            declared = Some(n);
            continue;
        }
        let (neg, body) = match line.strip_prefix('!') {
            Some(rest) => (true, rest),
            None => (false, line),
        };
        let mut it = body.split_whitespace().map(str::parse::<i32>);
        let cell = match (it.next(), it.next(), it.next()) {
            (Some(Ok(x)), Some(Ok(y)), None) => Cell::new(x, y),
            _ => return Err(err(format!("malformed cell line `{line}`"))),
        };
        let fresh = if neg {
            forbidden.insert(cell)
        } else {
            occupied.insert(cell)
        };
        if !fresh {
            return Err(err(format!("duplicate cell {cell}")));
        }
    }
    let n = declared.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if n != occupied.len() {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header declares {n} cells, found {}", occupied.len()),
        });
    }
    if occupied.iter().any(|c| forbidden.contains(c)) {
        return Err(Error::Parse {
            line: 0,
            msg: "a cell is both occupied and forbidden".into(),
        });
    }
    Ok((occupied, forbidden))
}
