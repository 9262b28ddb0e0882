//! Minimal commutative-ring abstraction shared by the symbolic modules.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Q;

/// A commutative Q-algebra with value semantics.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &Q) -> Self;

    fn scale_q(&self, q: &Q) -> Self {
        self.clone() * Self::from_rational(q)
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

pub trait Field: Ring {
    fn try_inv(&self) -> Option<Self>;

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|i| self.clone() * i)
    }
}

impl Ring for Q {
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
}

impl Field for Q {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
