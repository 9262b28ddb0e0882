//! The fraction field Q(V) in reduced form.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{div_exact, gcd};
use super::poly::Poly;
use super::rational::Q;
use super::ring::{Field, Ring};

/// `num / den` with `gcd(num, den) = 1` and `den` lexicographically monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc<V: Ord> {
    num: Poly<V, Q>,
    den: Poly<V, Q>,
}

impl<V: Ord + Clone + std::fmt::Debug> RatFunc<V> {
    pub fn new(num: Poly<V, Q>, den: Poly<V, Q>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let g = gcd(&num, &den);
        let mut n = div_exact(&num, &g).expect("gcd divides numerator");
        let mut d = div_exact(&den, &g).expect("gcd divides denominator");
        let lc = d
            .lex_leading()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        let inv = lc.recip();
        n = n.scale(&inv);
        d = d.scale(&inv);
        Some(RatFunc { num: n, den: d })
    }

    pub fn from_poly(p: Poly<V, Q>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: V) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn numer(&self) -> &Poly<V, Q> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<V, Q> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Zero for RatFunc<V> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<V: Ord + Clone + std::fmt::Debug> One for RatFunc<V> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Add for RatFunc<V> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den).expect("nonzero denominator");
        }
        RatFunc::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Neg for RatFunc<V> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Sub for RatFunc<V> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Mul for RatFunc<V> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: self.num * rhs.num,
                den: Poly::one(),
            };
        }
        RatFunc::new(self.num * rhs.num, self.den * rhs.den).expect("nonzero denominator")
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Ring for RatFunc<V> {
    fn from_rational(q: &Q) -> Self {
        Self::from_poly(Poly::from_q(q.clone()))
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Field for RatFunc<V> {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            RatFunc::new(self.den.clone(), self.num.clone())
        }
    }
}
