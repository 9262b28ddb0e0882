//! Explicit motivic Chabauty-Kim computations for the thrice-punctured line
//! over `Z[1/S]`.

pub mod algebra;
pub mod cocycle;
pub mod galois;
pub mod geometric;
pub mod loci;
pub mod padic;
pub mod pipeline;
pub mod shuffle;
pub mod suites;
