mod common;

use std::collections::HashSet;

use clump_core::enumeration::{census, census_with_clumps};
use clump_core::{boundary_circuit, is_self_avoiding_circuit, shoelace_area, CubicalSet};

use common::naive::{self, Cells};
use common::oracle::window_count;

fn to_cells(s: &CubicalSet) -> Cells {
    s.iter().map(|c| (c.x, c.y)).collect()
}

#[test]
fn census_matches_window_brute_force() {
    let c = census(6).unwrap();
    for n in 1..=6 {
        let w = window_count(n);
        assert_eq!(w.classes, c.a(n), "a_{n}");
        // every cell of a clump can sit on the centre, so each class shows up n times
        assert_eq!(w.containing, n as u64 * c.a(n), "n a_n at {n}");
    }
}

#[test]
fn census_matches_filtered_polyominoes() {
    let c = census_with_clumps(9).unwrap();
    let polys = naive::fixed_polyominoes(9);
    for n in 1..=9 {
        let expected: HashSet<Cells> = polys[n - 1].iter().filter(|p| naive::clump(p)).cloned().collect();
        let got: HashSet<Cells> = c.clumps_of(n).unwrap().iter().map(|s| naive::normalise(&to_cells(s))).collect();
        assert_eq!(got.len(), c.clumps_of(n).unwrap().len(), "duplicates at {n}");
        assert_eq!(got, expected, "clump list at {n}");
        assert_eq!(c.a(n), expected.len() as u64);
    }
}

#[test]
fn known_small_counts() {
    let c = census(10).unwrap();
    let a: Vec<u64> = (1..=10).map(|n| c.a(n)).collect();
    assert_eq!(a, [1, 2, 6, 19, 63, 216, 756, 2684, 9638, 34930]);
}

#[test]
fn ratios_climb_towards_the_polygon_constant() {
    let c = census(10).unwrap();
    let mut prev = 0.0;
    for n in 2..=9 {
        let r = c.ratio(n).unwrap();
        assert!(r >= prev, "ratio dips at {n}: {r} < {prev}");
        prev = r;
    }
    for n in 6..=10 {
        let r = c.ratio(n).unwrap();
        assert!(r > 3.0 && r < 4.2, "ratio {r} at {n}");
    }
}

#[test]
fn boundaries_are_simple_circuits_enclosing_n() {
    let c = census_with_clumps(8).unwrap();
    for n in 1..=8 {
        let mut seen = HashSet::new();
        for s in c.clumps_of(n).unwrap() {
            let circuit = boundary_circuit(s);
            assert!(is_self_avoiding_circuit(&circuit), "{:?}", to_cells(s));
            assert_eq!(shoelace_area(&circuit), n as f64);
            // the circuit determines the clump, so translated circuits are distinct
            let (x0, y0) = *circuit.iter().min().unwrap();
            let key: Vec<_> = circuit.iter().map(|&(x, y)| (x - x0, y - y0)).collect();
            assert!(seen.insert(key));
        }
    }
}
