//! Symbolic coordinates on the motivic Galois group: polylog symbols, their
//! coproduct, and expansion in the f-word basis.

pub mod certificate;
pub mod coproduct;
pub mod expand;
pub mod expression;
pub mod symbol;
pub mod table;

pub use certificate::{
    basis_certificate_deg3, f_sigma_tau_expression, BasisCertificate, FSigmaTau,
};
pub use coproduct::{goncharov_reduced_coproduct, SymbolTensor};
pub use expand::{kummer_degree_one, BasisExpander, Expansion, Primitive};
pub use expression::{MotivicExpression, SymbolPoly};
pub use symbol::{motivic_generators, sigma, tau, PlaceSet, PolylogSymbol};
pub use table::{PeriodEntry, PeriodTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("place set must be nonempty")]
    EmptyPlaceSet,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("{z} is not an S-unit: prime {prime} divides it")]
    NotSUnit { z: String, prime: u64 },
    #[error("invalid symbol {0}")]
    InvalidSymbol(String),
    #[error("generator {0} is outside the weight bound")]
    MissingGenerator(String),
    #[error("primitive coefficient of {symbol} over {places} is unknown")]
    UnknownPrimitive { symbol: String, places: String },
    #[error("inconsistent expansion: {0}")]
    Inconsistent(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("no built-in recipe for place set {0}")]
    NoRecipe(String),
    #[error("period table format: {0}")]
    TableFormat(String),
}
