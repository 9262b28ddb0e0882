//! Fixed-precision p-adic numbers with tracked precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use super::PadicError;
use crate::algebra::rational::ord_int;
use crate::algebra::Q;

/// `p^val · unit + O(p^(val + rel))`; zero carries only its absolute precision `val`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    p: u64,
    val: i64,
    unit: BigInt,
    rel: u32,
}

pub(crate) fn pow_p(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

pub(crate) fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl Padic {
    pub fn zero(p: u64, abs_prec: i64) -> Self {
        Padic {
            p,
            val: abs_prec,
            unit: BigInt::zero(),
            rel: 0,
        }
    }

    /// `p^val · n` known modulo `p^abs_prec`.
    fn from_scaled(p: u64, val: i64, n: BigInt, abs_prec: i64) -> Self {
        if n.is_zero() || abs_prec <= val {
            return Padic::zero(p, abs_prec);
        }
        let v = ord_int(&n, p);
        let shifted = val + v;
        if shifted >= abs_prec {
            return Padic::zero(p, abs_prec);
        }
        let unit = n / pow_p(p, v as u32);
        let rel = (abs_prec - shifted) as u32;
        Padic {
            p,
            val: shifted,
            unit: unit.mod_floor(&pow_p(p, rel)),
            rel,
        }
    }

    pub fn from_int(p: u64, n: i64, abs_prec: i64) -> Self {
        Padic::from_scaled(p, 0, BigInt::from(n), abs_prec)
    }

    pub fn from_bigint(p: u64, n: &BigInt, abs_prec: i64) -> Self {
        Padic::from_scaled(p, 0, n.clone(), abs_prec)
    }

    pub fn from_rational(p: u64, x: &Q, abs_prec: i64) -> Self {
        if x.is_zero() {
            return Padic::zero(p, abs_prec);
        }
        let vn = ord_int(x.numer(), p);
        let vd = ord_int(x.denom(), p);
        let val = vn - vd;
        if val >= abs_prec {
            return Padic::zero(p, abs_prec);
        }
        let rel = (abs_prec - val) as u32;
        let m = pow_p(p, rel);
        let un = x.numer() / pow_p(p, vn as u32);
        let ud = x.denom() / pow_p(p, vd as u32);
        let unit = (un * modinv(&ud, &m).expect("unit denominator")).mod_floor(&m);
        Padic { p, val, unit, rel }
    }

    pub fn one(p: u64, abs_prec: i64) -> Self {
        Padic::from_int(p, 1, abs_prec)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Valuation; for a zero this is the absolute precision.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn abs_prec(&self) -> i64 {
        self.val + self.rel as i64
    }

    pub fn rel_prec(&self) -> u32 {
        self.rel
    }

    /// True when the value is indistinguishable from zero at its precision.
    pub fn is_zero(&self) -> bool {
        self.rel == 0
    }

    pub fn unit_part(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.val == 0
    }

    /// Lowers the absolute precision to at most `abs_prec`.
    pub fn truncate(&self, abs_prec: i64) -> Self {
        if abs_prec >= self.abs_prec() {
            return self.clone();
        }
        if self.is_zero() {
            return Padic::zero(self.p, abs_prec);
        }
        Padic::from_scaled(self.p, self.val, self.unit.clone(), abs_prec)
    }

    /// Representative `p^val · unit` as a rational.
    pub fn to_rational(&self) -> Q {
        if self.is_zero() {
            return Q::zero();
        }
        let pv = pow_p(self.p, self.val.unsigned_abs() as u32);
        if self.val >= 0 {
            Q::from_integer(&self.unit * pv)
        } else {
            Q::new(self.unit.clone(), pv)
        }
    }

    /// Residue class mod p of an integral value.
    pub fn residue(&self) -> Option<u64> {
        if self.val < 0 && !self.is_zero() {
            return None;
        }
        if self.is_zero() || self.val > 0 {
            return Some(0);
        }
        (&self.unit % BigInt::from(self.p)).to_u64()
    }

    fn check(&self, other: &Padic) -> Result<(), PadicError> {
        if self.p != other.p {
            return Err(PadicError::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }

    fn add_signed(&self, other: &Padic, negate: bool) -> Padic {
        assert_eq!(self.p, other.p, "p-adic numbers over different primes");
        let abs = self.abs_prec().min(other.abs_prec());
        let m = self.val.min(other.val);
        if abs <= m {
            return Padic::zero(self.p, abs);
        }
        let lift = |x: &Padic| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                &x.unit * pow_p(x.p, (x.val - m) as u32)
            }
        };
        let b = lift(other);
        let s = if negate {
            lift(self) - b
        } else {
            lift(self) + b
        };
        Padic::from_scaled(
            self.p,
            m,
            s.mod_floor(&pow_p(self.p, (abs - m) as u32)),
            abs,
        )
    }

    pub fn add(&self, other: &Padic) -> Padic {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Padic) -> Padic {
        self.add_signed(other, true)
    }

    pub fn neg(&self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let m = pow_p(self.p, self.rel);
        Padic {
            p: self.p,
            val: self.val,
            unit: (-&self.unit).mod_floor(&m),
            rel: self.rel,
        }
    }

    pub fn mul(&self, other: &Padic) -> Padic {
        assert_eq!(self.p, other.p, "p-adic numbers over different primes");
        if self.is_zero() || other.is_zero() {
            return Padic::zero(self.p, self.val + other.val);
        }
        let rel = self.rel.min(other.rel);
        let m = pow_p(self.p, rel);
        Padic {
            p: self.p,
            val: self.val + other.val,
            unit: (&self.unit * &other.unit).mod_floor(&m),
            rel,
        }
    }

    pub fn try_div(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.check(other)?;
        if other.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Padic::zero(self.p, self.val - other.val));
        }
        let rel = self.rel.min(other.rel);
        let m = pow_p(self.p, rel);
        let inv = modinv(&other.unit, &m).expect("unit");
        Ok(Padic {
            p: self.p,
            val: self.val - other.val,
            unit: (&self.unit * inv).mod_floor(&m),
            rel,
        })
    }

    pub fn div(&self, other: &Padic) -> Padic {
        self.try_div(other).expect("division by a p-adic zero")
    }

    /// Multiplication by an exact rational; only the rational's valuation moves the precision.
    pub fn mul_q(&self, x: &Q) -> Padic {
        if x.is_zero() {
            return Padic::zero(self.p, i64::MAX / 4);
        }
        let vx = ord_int(x.numer(), self.p) - ord_int(x.denom(), self.p);
        if self.is_zero() {
            return Padic::zero(self.p, self.val + vx);
        }
        let exact = Padic::from_rational(self.p, x, vx + self.rel as i64);
        self.mul(&exact)
    }

    pub fn div_q(&self, x: &Q) -> Padic {
        self.mul_q(&x.recip())
    }

    pub fn pow(&self, e: u32) -> Padic {
        if e == 0 {
            return Padic::one(self.p, self.rel.max(1) as i64);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Digits `a_val, a_(val+1), ...` in `[0, p)`, one per known place.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.rel as usize);
        let mut n = self.unit.clone();
        let p = BigInt::from(self.p);
        for _ in 0..self.rel {
            let (q, r) = n.div_mod_floor(&p);
            out.push(r.to_u64().expect("digit"));
            n = q;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"p": self.p, "val": self.val, "digits": self.digits(), "prec": self.abs_prec()})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PadicError> {
        let bad = || PadicError::Format(v.to_string());
        let p = v["p"].as_u64().ok_or_else(bad)?;
        let val = v["val"].as_i64().ok_or_else(bad)?;
        let prec = v["prec"].as_i64().ok_or_else(bad)?;
        let digits = v["digits"].as_array().ok_or_else(bad)?;
        let mut n = BigInt::zero();
        for d in digits.iter().rev() {
            n = n * BigInt::from(p) + BigInt::from(d.as_u64().ok_or_else(bad)?);
        }
        let x = Padic::from_scaled(p, val, n, prec);
        Ok(if digits.is_empty() {
            Padic::zero(p, prec)
        } else {
            x
        })
    }

    /// Signed representative of the unit part, for compact display in tests.
    pub fn signed_unit(&self) -> BigInt {
        let m = pow_p(self.p, self.rel);
        if &self.unit * 2 > m {
            &self.unit - m
        } else {
            self.unit.clone()
        }
    }

    pub fn is_negative_rep(&self) -> bool {
        self.signed_unit().is_negative()
    }
}

impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        let mut first = true;
        for (i, d) in self.digits().into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            let e = self.val + i as i64;
            let term = match e {
                0 => format!("{d}"),
                1 => format!("{d}*{p}"),
                _ => format!("{d}*{p}^{e}"),
            };
            if !first {
                f.write_str(" + ")?;
            }
            f.write_str(&term)?;
            first = false;
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O({p}^{})", self.abs_prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn precision_rules() {
        let a = Padic::from_rational(5, &q(1, 3), 10);
        let b = Padic::from_int(5, 25, 6);
        assert_eq!(a.add(&b).abs_prec(), 6);
        assert_eq!(b.valuation(), 2);
        assert_eq!(b.rel_prec(), 4);
        let c = a.mul(&b);
        assert_eq!((c.valuation(), c.rel_prec()), (2, 4));
        let d = a.div(&b);
        assert_eq!((d.valuation(), d.rel_prec()), (-2, 4));
        assert_eq!(
            Padic::from_rational(5, &q(1, 3), 10).mul_q(&qi(3)),
            Padic::one(5, 10)
        );
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let x = q(-26, 3);
        let y = q(7, 8);
        let px = Padic::from_rational(7, &x, 12);
        let py = Padic::from_rational(7, &y, 12);
        assert_eq!(
            px.mul(&py),
            Padic::from_rational(7, &(x.clone() * y.clone()), 12)
        );
        assert_eq!(
            px.sub(&py),
            Padic::from_rational(7, &(x.clone() - y.clone()), 12)
        );
        let d = px.div(&py);
        assert_eq!(d.abs_prec(), 10);
        assert!(d.sub(&Padic::from_rational(7, &(x / y), 12)).is_zero());
        let z = Padic::from_int(5, 7, 4).sub(&Padic::from_int(5, 7, 4));
        assert!(z.is_zero());
        assert_eq!(z.abs_prec(), 4);
    }

    #[test]
    fn rendering_and_json() {
        let x = Padic::from_int(5, -1, 3);
        assert_eq!(x.to_string(), "4 + 4*5 + 4*5^2 + O(5^3)");
        assert_eq!(Padic::from_json(&x.to_json()).unwrap(), x);
        let z = Padic::zero(7, 5);
        assert_eq!(Padic::from_json(&z.to_json()).unwrap(), z);
        assert_eq!(z.to_string(), "O(7^5)");
    }
}
