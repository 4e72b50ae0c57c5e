//! Finite-dimensional hom-algebras given by structure constants, identity
//! checkers, twisting constructions, the Jackson σ-derivation model and
//! enveloping presentations.
//!
//! Identities are checked on basis tuples only; by multilinearity that is
//! complete.

mod algebra;
mod bracket;
mod envelope;
mod io;
mod sigma;

pub use algebra::{
    apply, centroid_products, example_one, identity, inverse, mat_mul, show_vec, yau_twist,
    FiniteHomAlgebra, Identity, Twist, Vector, Violation,
};
pub use bracket::{commutator_algebra, q_sl2, BracketAlgebra, SL2_NAMES};
pub use envelope::{envelope_presentation, EnvelopePresentation};
pub use io::{AlgebraFile, LoadedAlgebra};
pub use sigma::SigmaDerivationModel;

use crate::rewrite::RewriteError;
use crate::scalar::ScalarError;
use crate::term::TermError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomAlgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("bracket is not skew at (e{0}, e{1})")]
    NotSkew(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("degree {degree} does not fit the truncation t^{truncation} = 0")]
    Overflow { degree: usize, truncation: usize },
    #[error("q must be given a rational value")]
    SymbolicValue,
    #[error("a structure constant has a pole at the given q")]
    Pole,
    #[error("invalid algebra file: {0}")]
    Json(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Linear(#[from] crate::linear::LinearError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Order(#[from] crate::order::OrderError),
}
