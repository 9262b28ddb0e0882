//! Precision policy and a per-prime evaluation context for logs, polylogs,
//! zeta values and the period map.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::log::padic_log;
use super::number::Padic;
use super::polylog::{polylog_small, LocalPolylogTable};
use super::PadicError;
use crate::algebra::{format_q, Q};
use crate::galois::{MotivicExpression, PolylogSymbol, SymbolPoly};

/// Extra digits carried internally beyond the reported precision.
pub const HIDDEN_DIGITS: u32 = 10;

/// Working precision `M`, guard `g`, and the rule `x = y iff val(x − y) ≥ M − g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PadicPolicy {
    pub work_prec: u32,
    pub guard: u32,
}

impl Default for PadicPolicy {
    fn default() -> Self {
        PadicPolicy {
            work_prec: 12,
            guard: 3,
        }
    }
}

impl PadicPolicy {
    pub fn new(work_prec: u32, guard: u32) -> Result<Self, PadicError> {
        if work_prec <= guard {
            return Err(PadicError::Policy(format!(
                "need M > g, got M = {work_prec}, g = {guard}"
            )));
        }
        Ok(PadicPolicy { work_prec, guard })
    }

    pub fn threshold(&self) -> i64 {
        (self.work_prec - self.guard) as i64
    }

    /// Internal digits, including the hidden guard.
    pub fn internal_digits(&self) -> u32 {
        self.work_prec + HIDDEN_DIGITS
    }

    /// Caps a value at the reported precision `M`.
    pub fn report(&self, x: &Padic) -> Padic {
        x.truncate(self.work_prec as i64)
    }

    /// Reported valuation used by the equality rule.
    pub fn reported_valuation(&self, x: &Padic) -> i64 {
        self.report(x).valuation()
    }

    pub fn is_zero(&self, x: &Padic) -> bool {
        self.reported_valuation(x) >= self.threshold()
    }

    pub fn equal(&self, x: &Padic, y: &Padic) -> bool {
        self.is_zero(&x.sub(y))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"M": self.work_prec, "g": self.guard, "hidden": HIDDEN_DIGITS})
    }
}

/// Numerical context at one prime.
#[derive(Clone, Debug)]
pub struct PadicContext {
    p: u64,
    policy: PadicPolicy,
    table: Arc<LocalPolylogTable>,
}

/// Directory for cached polylog tables, from `CK_TABLE_CACHE`.
pub fn table_cache_dir() -> Option<PathBuf> {
    std::env::var_os("CK_TABLE_CACHE").map(PathBuf::from)
}

impl PadicContext {
    pub fn new(p: u64, max_weight: u32, policy: PadicPolicy) -> Result<Self, PadicError> {
        let dir = table_cache_dir();
        let table = LocalPolylogTable::cached(
            dir.as_deref(),
            p,
            max_weight.max(1),
            policy.internal_digits(),
        )?;
        Ok(PadicContext {
            p,
            policy,
            table: Arc::new(table),
        })
    }

    pub fn from_table(table: LocalPolylogTable, policy: PadicPolicy) -> Self {
        PadicContext {
            p: table.p,
            policy,
            table: Arc::new(table),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn policy(&self) -> &PadicPolicy {
        &self.policy
    }

    pub fn table(&self) -> &LocalPolylogTable {
        &self.table
    }

    pub fn digits(&self) -> i64 {
        self.policy.internal_digits() as i64
    }

    pub fn number(&self, x: &Q) -> Padic {
        Padic::from_rational(self.p, x, self.digits())
    }

    pub fn log(&self, z: &Padic) -> Result<Padic, PadicError> {
        padic_log(z)
    }

    pub fn log_q(&self, z: &Q) -> Result<Padic, PadicError> {
        if z.is_zero() {
            return Err(PadicError::LogOfZero);
        }
        padic_log(&self.number(z))
    }

    /// `Li_k(z)` on good unit disks and on the disk around zero.
    pub fn polylog(&self, k: u32, z: &Padic) -> Result<Padic, PadicError> {
        if k == 0 {
            return Err(PadicError::WeightOutOfRange(0));
        }
        if z.valuation() >= 1 || z.is_zero() {
            return Ok(polylog_small(k, z, self.digits()));
        }
        self.table.polylog(k, z)
    }

    pub fn polylog_q(&self, k: u32, z: &Q) -> Result<Padic, PadicError> {
        if z.is_one() || z.is_zero() {
            return Err(PadicError::BadDisk {
                p: self.p,
                residue: format_q(z),
            });
        }
        self.polylog(k, &self.number(z))
    }

    /// `ζ_p(k)`: zero for even `k`, `Li_k(−1)/(2^(1−k) − 1)` for odd `k`.
    pub fn zeta(&self, k: u32) -> Result<Padic, PadicError> {
        if k < 2 {
            return Err(PadicError::WeightOutOfRange(k));
        }
        if k.is_multiple_of(2) {
            return Ok(Padic::zero(self.p, self.digits()));
        }
        let li = self.polylog_q(k, &-Q::one())?;
        let factor = Q::new(1.into(), num_bigint::BigInt::from(2).pow(k - 1)) - Q::one();
        Ok(li.div_q(&factor))
    }

    /// Divides by `ζ_p(k)`, refusing when it is not visibly nonzero.
    pub fn divide_by_zeta(&self, x: &Padic, k: u32) -> Result<Padic, PadicError> {
        let z = self.zeta(k)?;
        if self.policy.is_zero(&z) {
            return Err(PadicError::IrregularZero { p: self.p, k });
        }
        x.try_div(&z)
    }

    pub fn symbol(&self, s: &PolylogSymbol) -> Result<Padic, PadicError> {
        match s {
            PolylogSymbol::Log(z) => self.log_q(z),
            PolylogSymbol::Li(n, z) => self.polylog_q(*n, z),
            PolylogSymbol::Zeta(n) => self.zeta(*n),
        }
    }

    /// The period map on symbolic polynomials, evaluated termwise.
    pub fn period_poly(&self, e: &SymbolPoly) -> Result<Padic, PadicError> {
        let mut cache: BTreeMap<PolylogSymbol, Padic> = BTreeMap::new();
        let mut total = Padic::zero(self.p, self.digits());
        for (m, c) in e.terms() {
            let mut term = self.number(c);
            for (s, k) in m.pairs() {
                if !cache.contains_key(s) {
                    cache.insert(s.clone(), self.symbol(s)?);
                }
                term = term.mul(&cache[s].pow(*k));
            }
            total = total.add(&term);
        }
        Ok(total)
    }

    pub fn period_map(&self, e: &MotivicExpression) -> Result<Padic, PadicError> {
        self.period_poly(e.poly())
    }
}

/// `a/b` with `|a| ≤ num_bound`, `0 < b ≤ den_bound`, `p ∤ b`, congruent to `x`.
pub fn rational_reconstruct(x: &Padic, num_bound: u64, den_bound: u64) -> Option<Q> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    if x.is_zero() {
        return Some(Q::zero());
    }
    if x.valuation() < 0 {
        return None;
    }
    let p = x.prime();
    let m = BigInt::from(p).pow(x.abs_prec() as u32);
    let (nb, db) = (BigInt::from(num_bound), BigInt::from(den_bound));
    debug_assert!(
        BigInt::from(2) * &nb * &db < m,
        "bounds too large for the precision"
    );
    let u = (x.unit_part() * BigInt::from(p).pow(x.valuation() as u32)).mod_floor(&m);
    let (mut r0, mut s0) = (m.clone(), BigInt::zero());
    let (mut r1, mut s1) = (u, BigInt::one());
    while r1 > nb {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > db {
        return None;
    }
    let (a, b) = if s1.is_negative() {
        (-r1, -s1)
    } else {
        (r1, s1)
    };
    if !a.gcd(&b).is_one() || (&b % BigInt::from(p)).is_zero() {
        return None;
    }
    let cand = Q::new(a, b);
    let back = Padic::from_rational(p, &cand, x.abs_prec());
    back.sub(x).is_zero().then_some(cand)
}

/// Bounds `(B, B)` with `2B² < p^prec`, capped at `cap`.
pub fn balanced_bounds(p: u64, prec: i64, cap: u64) -> (u64, u64) {
    let mut b = cap;
    let m = num_bigint::BigInt::from(p).pow(prec.max(0) as u32);
    while b > 0
        && num_bigint::BigInt::from(2) * num_bigint::BigInt::from(b) * num_bigint::BigInt::from(b)
            >= m
    {
        b /= 2;
    }
    (b, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn ctx(p: u64) -> PadicContext {
        PadicContext::from_table(
            LocalPolylogTable::build(p, 4, 22).unwrap(),
            PadicPolicy::default(),
        )
    }

    #[test]
    fn zeta_values() {
        for p in [5u64, 7] {
            let c = ctx(p);
            assert!(c.zeta(2).unwrap().is_zero());
            assert!(c.zeta(4).unwrap().is_zero());
            let z3 = c.zeta(3).unwrap();
            let li = c.polylog_q(3, &qi(-1)).unwrap();
            assert!(z3.sub(&li.mul_q(&q(-4, 3))).valuation() >= 20);
            assert!(!c.policy().is_zero(&z3));
        }
    }

    #[test]
    fn reconstruction() {
        for (p, x, prec, b) in [(5u64, q(-26, 3), 10i64, 100u64), (7, q(7, 8), 8, 100)] {
            let px = Padic::from_rational(p, &x, prec);
            assert_eq!(rational_reconstruct(&px, b, b), Some(x));
        }
        assert_eq!(
            rational_reconstruct(&Padic::zero(5, 10), 10, 10),
            Some(Q::zero())
        );
        let junk = Padic::from_int(5, 123_456_789, 12);
        assert_eq!(rational_reconstruct(&junk, 20, 20), None);
    }

    #[test]
    fn identities_over_two_and_nine() {
        for p in [5u64, 7] {
            let c = ctx(p);
            let l2 = c.log_q(&qi(2)).unwrap();
            let a = c.polylog_q(3, &q(1, 2)).unwrap();
            let r = a
                .sub(&l2.pow(3).div_q(&qi(6)))
                .sub(&c.zeta(3).unwrap().mul_q(&q(7, 8)));
            assert!(c.policy().is_zero(&r), "p={p}: {r}");
            let d = c
                .polylog_q(3, &qi(9))
                .unwrap()
                .sub(&c.polylog_q(3, &qi(3)).unwrap().mul_q(&qi(12)));
            let w = c.divide_by_zeta(&d, 3).unwrap();
            let w = c.policy().report(&w);
            assert!(w.abs_prec() >= 9);
            let (nb, db) = balanced_bounds(p, w.abs_prec(), 1000);
            assert_eq!(rational_reconstruct(&w, nb, db), Some(q(-26, 3)));
        }
    }

    #[test]
    fn period_map_is_multiplicative() {
        let c = ctx(7);
        let a = MotivicExpression::li(2, &qi(3)).unwrap()
            + MotivicExpression::log(&qi(2)).unwrap().scale(&q(1, 2));
        let b = MotivicExpression::li(3, &q(1, 2)).unwrap() - MotivicExpression::zeta(3).unwrap();
        let lhs = c.period_map(&(a.clone() * b.clone())).unwrap();
        let rhs = c.period_map(&a).unwrap().mul(&c.period_map(&b).unwrap());
        assert!(c.policy().equal(&lhs, &rhs));
        assert!(c
            .period_map(&MotivicExpression::log(&qi(-1)).unwrap())
            .unwrap()
            .is_zero());
    }
}
