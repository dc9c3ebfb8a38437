use std::fmt;

use crate::space::OpenSet;

/// Location-aware error raised by the text-format parsers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Re-anchor an error produced by a single-line parser.
    pub fn at_line(mut self, line: usize) -> Self {
        self.line = line;
        self
    }

    /// Shift the column, for parsers that delegate a substring.
    pub fn offset(mut self, by: usize) -> Self {
        self.column += by;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Why a family of subsets fails to be a topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologyViolation {
    MissingEmpty,
    MissingWhole,
    ElementOutOfRange(usize),
    UnionEscapes(OpenSet, OpenSet),
    IntersectionEscapes(OpenSet, OpenSet),
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyViolation::MissingEmpty => write!(f, "the empty set is missing"),
            TopologyViolation::MissingWhole => write!(f, "the whole set is missing"),
            TopologyViolation::ElementOutOfRange(i) => {
                write!(f, "element {} is outside the ground set", i + 1)
            }
            TopologyViolation::UnionEscapes(a, b) => {
                write!(f, "union of {a} and {b} is not in the family")
            }
            TopologyViolation::IntersectionEscapes(a, b) => {
                write!(f, "intersection of {a} and {b} is not in the family")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a topology: {0}")]
    NotATopology(TopologyViolation),
    #[error("not a preorder: {0}")]
    InvalidPreorder(String),
    #[error("not a strict partial order: {0}")]
    InvalidOrder(String),
    #[error("index {index} out of range for a set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation requires a nonempty space")]
    EmptySpace,
    #[error("space is not T0")]
    NotT0,
    #[error("invalid linear extension: {0}")]
    InvalidExtension(String),
    #[error("the half-shuffle 1 < 1 is undefined")]
    UnitNotAllowed,
    #[error("half-unshuffles are undefined on the empty word")]
    EmptyWord,
    #[error("invalid graded permutation: {0}")]
    InvalidPermutation(String),
    #[error("{what} of size {n} exceeds the cap {cap}")]
    Unsupported {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("too many points: {0} (at most 64 supported)")]
    TooLarge(usize),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
