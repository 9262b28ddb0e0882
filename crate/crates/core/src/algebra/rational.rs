//! Exact rationals and small integer helpers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| err())?;
            let d: BigInt = b.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| err())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Multiplicity of the prime `l` in a nonzero integer.
pub fn ord_int(n: &BigInt, l: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let l = BigInt::from(l);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (qq, r) = m.div_rem(&l);
        if !r.is_zero() {
            return v;
        }
        m = qq;
        v += 1;
    }
}

/// `ord_l(x)` for nonzero rational `x`.
pub fn ord(x: &Q, l: u64) -> i64 {
    ord_int(x.numer(), l) - ord_int(x.denom(), l)
}

/// Prime factorization of |n| by trial division; `n` must be nonzero.
pub fn factor_int(n: &BigInt) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut m = n.abs();
    assert!(!m.is_zero(), "factorization of zero");
    let mut d: u64 = 2;
    loop {
        let dd = BigInt::from(d);
        if &dd * &dd > m {
            break;
        }
        while (&m % &dd).is_zero() {
            m /= &dd;
            *out.entry(d).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let last = m.to_u64().expect("prime factor exceeds u64");
        *out.entry(last).or_insert(0) += 1;
    }
    out
}

/// Primes dividing the numerator or denominator of a nonzero rational.
pub fn support(x: &Q) -> Vec<u64> {
    let mut s: Vec<u64> = factor_int(x.numer()).into_keys().collect();
    s.extend(factor_int(x.denom()).into_keys());
    s.sort_unstable();
    s.dedup();
    s
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Display wrapper using [`format_q`].
pub struct Rat<'a>(pub &'a Q);

impl fmt::Display for Rat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(self.0))
    }
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-7", "7/8", "-26/3", "1/2"] {
            assert_eq!(format_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(format_q(&parse_q("4/8").unwrap()), "1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(ord(&qi(9), 3), 2);
        assert_eq!(ord(&q(1, 2), 2), -1);
        assert_eq!(ord(&qi(-8), 2), 3);
        assert_eq!(support(&q(-9, 8)), vec![2, 3]);
        assert!(support(&qi(-1)).is_empty());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(4), BigInt::from(24));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
