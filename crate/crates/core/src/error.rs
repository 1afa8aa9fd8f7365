use thiserror::Error;

use crate::incidence::Sort;
use crate::io::ParseError;
use crate::lines::LineInvariant;
use crate::report::Witness;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{sort} index {index} out of range for a structure with {size} {sort}s")]
    IndexOutOfRange {
        sort: Sort,
        index: usize,
        size: usize,
    },

    #[error("{sort} set has universe {found}, structure has {expected} {sort}s")]
    UniverseMismatch {
        sort: Sort,
        expected: usize,
        found: usize,
    },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    #[error("malformed line {presentation}: {invariant}")]
    MalformedLine {
        presentation: Witness,
        invariant: LineInvariant,
    },

    #[error("distinct lines share {shared_points} point(s) but {shared_planes} plane(s)")]
    MeetViolation {
        shared_points: usize,
        shared_planes: usize,
    },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("q = {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u32, bound: u32 },

    #[error("structure has {size} {sort}s, above the exhaustive bound of {bound}; use sampling")]
    TooLarge {
        sort: Sort,
        size: usize,
        bound: usize,
    },

    #[error("axiom check failed ({failed}); theorem checks require a conforming structure")]
    AxiomsFailed { failed: String },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(&'static str),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
