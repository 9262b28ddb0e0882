//! Sparse multivariate polynomials over an arbitrary coefficient ring.
//!
//! Monomials store `(variable, exponent)` pairs sorted by descending
//! variable, so the derived `Ord` is the pure lexicographic monomial order
//! with larger variables more significant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Q;
use super::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial<V: Ord>(Vec<(V, u32)>);

impl<V: Ord + Clone + std::fmt::Debug> Monomial<V> {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: V) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut m: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        Monomial(m.into_iter().rev().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Pairs in descending variable order.
    pub fn pairs(&self) -> &[(V, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn weighted_degree(&self, w: impl Fn(&V) -> u32) -> u32 {
        self.0.iter().map(|(v, e)| w(v) * e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.0.iter().map(|(v, _)| v)
    }

    fn as_map(&self) -> BTreeMap<V, u32> {
        self.0.iter().cloned().collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = self.as_map();
        for (v, e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m.into_iter().rev().collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut m = self.as_map();
        for (v, e) in &other.0 {
            let x = m.get_mut(v).expect("divisibility checked");
            *x -= e;
        }
        Some(Monomial(
            m.into_iter().rev().filter(|(_, e)| *e > 0).collect(),
        ))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = self.as_map();
        for (v, e) in &other.0 {
            let x = m.entry(v.clone()).or_insert(0);
            *x = (*x).max(*e);
        }
        Monomial(m.into_iter().rev().collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().all(|(v, _)| other.exponent(v) == 0)
    }

    /// Splits into the part made of variables satisfying `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&V) -> bool) -> (Self, Self) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    pub fn map_vars<W: Ord + Clone + std::fmt::Debug>(&self, f: impl Fn(&V) -> W) -> Monomial<W> {
        Monomial::from_pairs(self.0.iter().map(|(v, e)| (f(v), *e)))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<V: Ord, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Poly<V, C> {
    pub fn new() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn term(m: Monomial<V>, c: C) -> Self {
        let mut p = Self::new();
        p.add_term(m, c);
        p
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut p = Self::new();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial<V>, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Leading term under the lexicographic order.
    pub fn lex_leading(&self) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<V> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone())),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial<V>, c: &C) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(n, x)| (n.mul(m), x.clone() * c.clone())),
        )
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<V, D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Ring, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<Poly<V, D>, E> {
        let mut out = Poly::new();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_vars<W: Ord + Clone + std::fmt::Debug>(&self, f: impl Fn(&V) -> W) -> Poly<W, C> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Evaluates the ring homomorphism determined by images of coefficients and variables.
    pub fn eval<R: Ring>(&self, coeff: impl Fn(&C) -> R, var: impl Fn(&V) -> R) -> R {
        let r: Result<R, std::convert::Infallible> =
            self.try_eval(|c| Ok(coeff(c)), |v| Ok(var(v)));
        r.unwrap_or_else(|e| match e {})
    }

    pub fn try_eval<R: Ring, E>(
        &self,
        coeff: impl Fn(&C) -> Result<R, E>,
        var: impl Fn(&V) -> Result<R, E>,
    ) -> Result<R, E> {
        let mut cache: BTreeMap<V, R> = BTreeMap::new();
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c)?;
            for (v, e) in m.pairs() {
                let base = match cache.get(v) {
                    Some(b) => b.clone(),
                    None => {
                        let b = var(v)?;
                        cache.insert(v.clone(), b.clone());
                        b
                    }
                };
                t = t * base.pow_u(*e);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for variables, keeping coefficients.
    pub fn substitute(&self, var: impl Fn(&V) -> Poly<V, C>) -> Self {
        self.eval(|c| Poly::constant(c.clone()), var)
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Default for Poly<V, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<V: Ord + Clone + std::fmt::Debug> Poly<V, Q> {
    pub fn from_q(q: Q) -> Self {
        Self::constant(q)
    }

    /// Divides by the lexicographic leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Zero for Poly<V, C> {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> One for Poly<V, C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Add for Poly<V, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Sub for Poly<V, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Neg for Poly<V, C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Mul for Poly<V, C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<V: Ord + Clone + std::fmt::Debug, C: Ring> Ring for Poly<V, C> {
    fn from_rational(q: &Q) -> Self {
        Self::constant(C::from_rational(q))
    }
}

impl<V: Ord + Clone + std::fmt::Debug + fmt::Display, C: Ring + fmt::Display> fmt::Display
    for Poly<V, C>
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, e) in m.pairs().iter().rev() {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    type P = Poly<u8, Q>;

    fn x() -> P {
        P::var(0)
    }
    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn lex_order_is_monomial_order() {
        let a = Monomial::from_pairs([(1u8, 1)]);
        let b = Monomial::from_pairs([(0u8, 1), (1, 1)]);
        let c = Monomial::from_pairs([(0u8, 5)]);
        assert!(a < b, "y < xy");
        assert!(c < a, "x^5 < y");
        assert!(Monomial::<u8>::one() < c);
    }

    #[test]
    fn ring_laws_on_samples() {
        let p = x() * x() + y() * qi(3).into_poly() - P::one();
        let r = y() - x();
        assert_eq!(
            (p.clone() + r.clone()) * r.clone(),
            p.clone() * r.clone() + r.clone() * r.clone()
        );
        assert_eq!(p.clone() - p.clone(), P::zero());
        assert_eq!(
            (x() + y()).pow_u(2),
            x() * x() + x() * y() * P::from_q(qi(2)) + y() * y()
        );
    }

    #[test]
    fn monomial_division() {
        let m = Monomial::from_pairs([(0u8, 2), (1, 1)]);
        let n = Monomial::from_pairs([(0u8, 1)]);
        assert_eq!(m.div(&n), Some(Monomial::from_pairs([(0u8, 1), (1, 1)])));
        assert_eq!(n.div(&m), None);
        assert_eq!(m.lcm(&Monomial::var(2)).total_degree(), 4);
    }

    #[test]
    fn evaluation_is_homomorphic() {
        let p = x() * y() + x();
        let v = p.eval(|c| c.clone(), |v| if *v == 0 { qi(2) } else { qi(5) });
        assert_eq!(v, qi(12));
    }

    trait IntoPoly {
        fn into_poly(self) -> P;
    }
    impl IntoPoly for Q {
        fn into_poly(self) -> P {
            P::from_q(self)
        }
    }
}
