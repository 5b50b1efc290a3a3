//! Planar clumps: regular cubical sets with contractible realization, the
//! local collapse/expand moves between them, a continuous-time Markov chain
//! driven by those moves, and excursion statistics of the chain's size.
//!
//! Modules:
//! - [`cell`], [`mask`], [`topology`], [`table`], [`clump`]: the data model,
//!   from-definition oracles and the 256-entry move table.
//! - [`enumeration`]: census of clumps by size and exhaustive verifiers.
//! - [`dynamics`]: the event-driven chain and its jump chain.
//! - [`excursions`]: returns to the single cell, exceedance point processes
//!   and their statistics.

pub mod cell;
pub mod clump;
pub mod dynamics;
pub mod enumeration;
pub mod error;
pub mod excursions;
pub mod format;
pub mod mask;
pub mod symmetry;
pub mod table;
pub mod topology;

pub use cell::{Cell, CubicalSet};
pub use clump::{boundary_circuit, is_self_avoiding_circuit, shoelace_area, Clump, Corner};
pub use dynamics::{ChainState, RunStatus, SimParams, StepRecord};
pub use enumeration::{census, Census, ConfigPattern};
pub use error::{Error, Result};
pub use excursions::{ExcursionLog, ExcursionTracker};
pub use mask::{mask_at, NeighborMask};
pub use symmetry::Symmetry;
pub use table::MoveTable;
pub use topology::{is_clump, is_contractible, is_regular};

/// Growth constant of square-lattice self-avoiding polygons counted by area.
pub const KAPPA: f64 = 3.971;
