//! Straightforward reimplementations used as test oracles. Nothing here
//! touches the bitmap code in the library.

use std::collections::{BTreeSet, HashSet, VecDeque};

pub type Cells = BTreeSet<(i32, i32)>;

const EDGE: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// No lattice vertex has exactly two diagonally opposite occupied cells.
pub fn regular(s: &Cells) -> bool {
    let mut corners = HashSet::new();
    for &(x, y) in s {
        for dx in 0..2 {
            for dy in 0..2 {
                corners.insert((x + dx, y + dy));
            }
        }
    }
    corners.into_iter().all(|(i, j)| {
        // cells around corner (i, j): SW, SE, NE, NW
        let q = [
            s.contains(&(i - 1, j - 1)),
            s.contains(&(i, j - 1)),
            s.contains(&(i, j)),
            s.contains(&(i - 1, j)),
        ];
        !((q[0] && q[2] && !q[1] && !q[3]) || (q[1] && q[3] && !q[0] && !q[2]))
    })
}

fn reach(start: (i32, i32), inside: impl Fn((i32, i32)) -> bool) -> usize {
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in EDGE {
            let c = (x + dx, y + dy);
            if inside(c) && seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    seen.len()
}

pub fn connected(s: &Cells) -> bool {
    match s.iter().next() {
        Some(&c) => reach(c, |p| s.contains(&p)) == s.len(),
        None => false,
    }
}

/// The complement of a finite set is connected iff the empty cells of the
/// 1-padded bounding box form one component.
pub fn complement_connected(s: &Cells) -> bool {
    let x0 = s.iter().map(|c| c.0).min().unwrap() - 1;
    let x1 = s.iter().map(|c| c.0).max().unwrap() + 1;
    let y0 = s.iter().map(|c| c.1).min().unwrap() - 1;
    let y1 = s.iter().map(|c| c.1).max().unwrap() + 1;
    let in_box = |(x, y): (i32, i32)| x >= x0 && x <= x1 && y >= y0 && y <= y1;
    let empty = ((x1 - x0 + 1) * (y1 - y0 + 1)) as usize - s.len();
    reach((x0, y0), |p| in_box(p) && !s.contains(&p)) == empty
}

pub fn clump(s: &Cells) -> bool {
    !s.is_empty() && regular(s) && connected(s) && complement_connected(s)
}

pub fn normalise(s: &Cells) -> Cells {
    let x0 = s.iter().map(|c| c.0).min().unwrap_or(0);
    let y0 = s.iter().map(|c| c.1).min().unwrap_or(0);
    s.iter().map(|&(x, y)| (x - x0, y - y0)).collect()
}

/// Fixed polyominoes of every size up to `n_max`, grown one cell at a time
/// and deduplicated by translation. `out[k]` holds size `k + 1`.
pub fn fixed_polyominoes(n_max: usize) -> Vec<Vec<Cells>> {
    let mut out: Vec<Vec<Cells>> = vec![vec![Cells::from([(0, 0)])]];
    for _ in 1..n_max {
        let mut next = HashSet::new();
        for p in out.last().unwrap() {
            for &(x, y) in p {
                for (dx, dy) in EDGE {
                    let c = (x + dx, y + dy);
                    if !p.contains(&c) {
                        let mut q = p.clone();
                        q.insert(c);
                        next.insert(normalise(&q));
                    }
                }
            }
        }
        let mut v: Vec<Cells> = next.into_iter().collect();
        v.sort();
        out.push(v);
    }
    out
}
