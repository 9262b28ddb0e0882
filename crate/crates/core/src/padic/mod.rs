//! p-adic numerics: precision-tracked arithmetic, Iwasawa logarithm,
//! Coleman polylogarithms on residue disks, zeta values and the period map.

mod complex;
mod context;
mod log;
mod number;
mod polylog;
mod trilog_identity;

pub use complex::{complex_li2, complex_li3, complex_p3, kummer_spence_check, ZETA3};
pub use context::{
    balanced_bounds, rational_reconstruct, table_cache_dir, PadicContext, PadicPolicy,
    HIDDEN_DIGITS,
};
pub use log::{padic_log, teichmuller};
pub use number::Padic;
pub use polylog::{
    eval_series, li1_direct, polylog_small, teichmuller_polylog, truncation_degree, DiskSeries,
    LocalPolylogTable,
};
pub use trilog_identity::{padic_l3_check, L3Check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("division by a p-adic zero")]
    DivisionByZero,
    #[error("mixed primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("argument lies in the bad residue disk {residue} mod {p}")]
    BadDisk { p: u64, residue: String },
    #[error("polylog weight {0} outside the table")]
    WeightOutOfRange(u32),
    #[error("prime {0} is not supported (need p ≥ 5)")]
    UnsupportedPrime(u64),
    #[error("zeta_{p}({k}) is below the precision threshold: possible irregular-zero")]
    IrregularZero { p: u64, k: u32 },
    #[error("precision policy: {0}")]
    Policy(String),
    #[error("malformed p-adic data: {0}")]
    Format(String),
}
