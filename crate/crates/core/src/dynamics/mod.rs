//! The continuous-time clump chain and its embedded jump chain.

mod chain;
mod lattice;
mod observe;

pub use chain::{run, run_state, Action, ChainState, RunStatus, RunSummary, SimParams, StepRecord};
pub use lattice::Lattice;
pub use observe::{stationary_ratio, Observer, SizeLaw, SizeRatio, TrajectoryRecorder, TRAJECTORY_HEADER};
