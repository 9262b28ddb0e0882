//! Coleman functions from specialized ideal elements, their zero loci on
//! `X(Z_p)`, the S3 action on loci and the counterexample cocycle at `−1`.

mod coleman;
mod counterexample;
mod s3;
mod zeros;

pub use coleman::{assemble_coleman, ColemanFunction};
pub use counterexample::{
    counterexample_cocycle, counterexample_coordinates, CounterexampleReport, NumericCheck,
    SymbolField, SymbolicCheck,
};
pub use s3::{s3_symmetrize, S3Map, S3Orbit};
pub use zeros::{
    find_zeros, intersect_loci, restrict_locus, Locus, LocusZero, GUESS_BOUND, MAX_DEPTH,
};

use crate::cocycle::CocycleError;
use crate::galois::GaloisError;
use crate::geometric::GeometricError;
use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LociError {
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Geometric(#[from] GeometricError),
    #[error("loci over different primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("degenerate function: {0}")]
    Degenerate(String),
}
