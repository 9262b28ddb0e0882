//! Brown coordinates on equivariant cocycles, the universal evaluation map,
//! and the Kummer map in coordinates.

mod coordinates;
mod evaluation;

pub use coordinates::{kappa, kappa_coordinates, CocycleCoordinates, PhiVar, PolylogWord};
pub use evaluation::{
    brown_entry, cocycle_apply, eval_universal, extract_coordinates, theta_sharp, EvaluationImage,
    PhiPoly,
};

use crate::galois::GaloisError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CocycleError {
    #[error("weight mismatch: word has weight {word}, dual word has weight {lambda}")]
    WeightMismatch { word: u32, lambda: u32 },
    #[error("no coordinate {0}")]
    InvalidCoordinate(String),
    #[error("missing coordinate {0}")]
    MissingCoordinate(String),
    #[error("Kummer coordinates are undefined at {0}")]
    Degenerate(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}
