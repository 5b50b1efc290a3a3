//! Census of clumps up to translation and exhaustive verification of the
//! planar collapsibility statements.

pub mod census;
pub mod patterns;
pub mod verify;

pub use census::{census, census_with, census_with_clumps, enumerate_clumps, for_each_polyomino, Census, DEFAULT_MAX_N};
pub use patterns::{ConfigPattern, Placement};
pub use verify::{
    line_clump, verify_config_lemmas, verify_locality, verify_two_collapsibility, CollapsibilityReport,
    ConfigLemmaReport, Counterexample, LocalityReport,
};
