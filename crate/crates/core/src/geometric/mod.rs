//! Elimination of cocycle coordinates from the universal evaluation image.

pub mod groebner;
mod ideal;
pub mod reference;
mod strategy;
mod verify;

pub use groebner::{Guard, GuardExceeded};
pub(crate) use ideal::target_order;
pub use ideal::{normalize, CoeffPoly, FracField, IdealElement, Target};
pub use strategy::{
    ck_ideal_generators, strategies, strategy, EliminationProblem, EliminationStrategy,
    GroebnerStrategy, StructuredStrategy,
};
pub use verify::{specialize_coefficients, verify_vanishing, SpecializedElement};

use crate::galois::GaloisError;
use crate::shuffle::ShuffleError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometricError {
    #[error("weight bound must be positive")]
    ZeroWeight,
    #[error("elimination guard exceeded ({}): {} steps, degree {}, basis size {}, {} pairs pending", .0.reason, .0.steps, .0.max_degree_seen, .0.basis_len, .0.pairs_left)]
    Guard(GuardExceeded),
    #[error("unknown elimination strategy {0:?}")]
    UnknownStrategy(String),
    #[error("strategy {strategy} does not apply: {reason}")]
    NotApplicable { strategy: String, reason: String },
    #[error("assignment does not cover f-words: {0}")]
    Uncovered(String),
    #[error("malformed ideal element: {0}")]
    Format(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
}
