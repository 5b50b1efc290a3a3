//! Command implementations behind the `clump` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod svg;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const COUNTEREXAMPLE: i32 = 2;
    pub const RESOURCE_BOUND: i32 = 3;
    pub const OVERFLOW: i32 = 4;
}

/// Exit code for an error returned by a command.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<clump_core::Error>() {
        Some(clump_core::Error::ResourceBound { .. }) => exit::RESOURCE_BOUND,
        _ => exit::OTHER,
    }
}
