use thiserror::Error;

use crate::cell::Cell;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cell set is not a clump")]
    NotAClump,

    #[error("cell {0} is not in the clump")]
    NotMember(Cell),

    #[error("cell {0} is already in the clump")]
    AlreadyMember(Cell),

    #[error("move through {0} is not allowed by the move table")]
    MoveNotAllowed(Cell),

    #[error("the pinned origin cell cannot be collapsed")]
    OriginPinned,

    #[error("census size {requested} exceeds the configured bound {bound}")]
    ResourceBound { requested: usize, bound: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("jump chain has no admissible move (M+ = M- = 0 or zero total weight)")]
    NoAdmissibleMove,

    #[error("no completed excursions recorded")]
    NoExcursions,
}

pub type Result<T> = std::result::Result<T, Error>;
