use thiserror::Error;

use crate::transitions::DeleteVariant;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed shape encoding at position {position}: {reason}")]
    MalformedEncoding {
        position: usize,
        reason: &'static str,
    },

    #[error("stage {stage} holds {states} shapes, above the cap of {cap}")]
    CapExceeded {
        stage: usize,
        states: u128,
        cap: u128,
    },

    #[error("in-order position {pos} is outside 1..={order}")]
    PositionOutOfRange { pos: usize, order: usize },

    #[error("cannot delete from the empty shape")]
    EmptyShape,

    #[error("invalid operation sequence: prefix {prefix:?} has more deletes than inserts")]
    InvalidSequence { prefix: String },

    #[error("unrecognised operation {symbol:?} at position {position}; expected 'i' or 'd'")]
    UnknownOperation { symbol: char, position: usize },

    #[error("(n, k) = ({n}, {k}) is outside 0 <= k <= n/2")]
    OutOfRange { n: usize, k: usize },

    #[error("sequence reaches stage {needed} but the diagram stops at stage {max_stage}")]
    DiagramTooSmall { needed: usize, max_stage: usize },

    #[error("diagram was built without the {0} delete variant")]
    MissingVariant(DeleteVariant),

    #[error("curve fit needs at least two points with positive counts")]
    DegenerateFit,

    #[error("p({n}, {k}) multiplier has a zero denominator: ({n}, {k}) is unreachable")]
    ZeroDenominator { n: usize, k: usize },

    #[error("path count overflowed 128 bits")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
