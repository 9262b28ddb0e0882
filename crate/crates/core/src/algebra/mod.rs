//! Exact algebra shared by the symbolic modules.

pub mod gcd;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;

pub use linalg::Matrix;
pub use poly::{Monomial, Poly};
pub use ratfunc::RatFunc;
pub use rational::{format_q, parse_q, q, qi, Q};
pub use ring::{Field, Ring};
