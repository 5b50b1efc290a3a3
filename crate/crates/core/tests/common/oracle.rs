//! Brute-force clump counts over a square window, independent of the
//! growth enumerator.

use clump_core::{is_clump, Cell, CubicalSet};

/// Counts from all `n`-subsets of the `(2n-1)`-square window that contain
/// the centre cell, filtered by the clump oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowCount {
    /// Clumps whose row-major minimum cell is the centre: one per
    /// translation class.
    pub classes: u64,
    /// All clumps containing the centre.
    pub containing: u64,
}

pub fn window_count(n: usize) -> WindowCount {
    assert!((1..=6).contains(&n), "window must fit in 128 bits");
    let s = 2 * n - 1;
    let centre = (n - 1) * s + (n - 1);
    let all: u128 = if s * s == 128 { !0 } else { (1u128 << (s * s)) - 1 };
    let mut left = 0u128;
    let mut right = 0u128;
    for r in 0..s {
        left |= 1u128 << (r * s);
        right |= 1u128 << (r * s + s - 1);
    }
    let spread = |b: u128| -> u128 {
        (b | ((b << 1) & !left) | ((b >> 1) & !right) | (b << s) | (b >> s)) & all
    };
    let connected = |set: u128| -> bool {
        let mut reach = 1u128 << centre;
        loop {
            let next = spread(reach) & set;
            if next == reach {
                return reach == set;
            }
            reach = next;
        }
    };
    let others: Vec<usize> = (0..s * s).filter(|&i| i != centre).collect();
    let mut count = WindowCount { classes: 0, containing: 0 };
    let mut chosen = Vec::with_capacity(n);
    choose(&others, n - 1, 0, 1u128 << centre, &mut chosen, &mut |set| {
        if !connected(set) {
            return;
        }
        let cells: CubicalSet = (0..s * s)
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| Cell::new((i % s) as i32, (i / s) as i32))
            .collect();
        if is_clump(&cells) {
            count.containing += 1;
            // bits below the centre are exactly the cells before it in (y, x) order
            if set & ((1u128 << centre) - 1) == 0 {
                count.classes += 1;
            }
        }
    });
    count
}

fn choose(pool: &[usize], k: usize, from: usize, set: u128, chosen: &mut Vec<usize>, f: &mut impl FnMut(u128)) {
    if k == 0 {
        f(set);
        return;
    }
    for i in from..=pool.len() - k {
        chosen.push(pool[i]);
        choose(pool, k - 1, i + 1, set | 1u128 << pool[i], chosen, f);
        chosen.pop();
    }
}
