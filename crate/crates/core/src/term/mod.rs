//! Signatures, Polish-notation contexts and the symmetric-group action.

mod context;
mod enumerate;
mod permutation;
mod signature;
mod weighted;

pub(crate) use context::{relabel_order_preserving, subterm_end};
pub use context::{Context, ShowContext, Token};
pub use enumerate::{enumerate_plane, enumerate_plane_with_limit, DEFAULT_ENUMERATION_LIMIT};
pub use permutation::Permutation;
pub use signature::{Signature, Symbol};
pub use weighted::WeightedTree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("invalid symbol name `{0}`")]
    InvalidSymbolName(String),
    #[error("symbol `{0}` declared twice")]
    DuplicateSymbol(String),
    #[error("line {0}: {1}")]
    AtLine(usize, Box<TermError>),
    #[error("bad declaration `{0}`, expected `op <name> <arity>`")]
    BadDeclaration(String),
    #[error("malformed term at token {position}: {reason}")]
    Malformed { position: usize, reason: String },
    #[error("unknown symbol `{name}` at token {position}")]
    UnknownSymbol { name: String, position: usize },
    #[error("box {0} occurs more than once")]
    DuplicateBox(u32),
    #[error("box {0} is missing")]
    MissingBox(u32),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("permutation degree {found} does not match arity {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("not a weighted tree: {reason} at token {position}")]
    Representation { position: usize, reason: String },
    #[error("enumeration of grading ({k},{l}) exceeds the limit k+l <= {limit}")]
    EnumerationLimit { k: usize, l: usize, limit: usize },
}
