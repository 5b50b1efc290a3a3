//! SVG rendering of a clump's outer boundary.

use std::fmt::Write as _;

use clump_core::{boundary_circuit, CubicalSet};

/// One closed path through the boundary circuit, drawn `scale` pixels per
/// cell with `y` pointing up. The path has one vertex per circuit step.
pub fn render_svg(cells: &CubicalSet, scale: u32) -> String {
    let circuit = boundary_circuit(cells);
    let Some((lo, hi)) = cells.bounds() else {
        return String::from("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"/>\n");
    };
    let s = scale as i64;
    let margin = s;
    let (w, h) = (
        (hi.x - lo.x + 1) as i64 * s + 2 * margin,
        (hi.y - lo.y + 1) as i64 * s + 2 * margin,
    );
    // corner (i, j) is the point (i - 1/2, j - 1/2) in cell coordinates
    let px = |(i, j): (i32, i32)| {
        (
            (i - lo.x) as i64 * s + margin,
            (hi.y + 1 - j) as i64 * s + margin,
        )
    };
    let mut d = String::new();
    let steps = circuit.len().saturating_sub(1);
    for (k, &c) in circuit.iter().take(steps).enumerate() {
        let (x, y) = px(c);
        let _ = write!(d, "{}{x} {y} ", if k == 0 { "M" } else { "L" });
    }
    d.push('Z');
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <!-- {} cells, boundary length {steps} -->\n\
         <path d=\"{d}\" fill=\"#9bb7d4\" stroke=\"#1f3b57\" stroke-width=\"1\"/>\n\
         </svg>\n",
        cells.len()
    )
}
