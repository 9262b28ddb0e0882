//! Exact division and gcd for multivariate polynomials over Q.

use num_traits::{One, Zero};

use super::poly::{Monomial, Poly};
use super::rational::Q;

type P<V> = Poly<V, Q>;

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn div_exact<V: Ord + Clone + std::fmt::Debug>(a: &P<V>, b: &P<V>) -> Option<P<V>> {
    let (lm_b, lc_b) = b.lex_leading()?;
    let (lm_b, lc_b) = (lm_b.clone(), lc_b.clone());
    let mut r = a.clone();
    let mut quo = P::zero();
    while let Some((lm_r, lc_r)) = r.lex_leading() {
        let m = lm_r.div(&lm_b)?;
        let c = lc_r / &lc_b;
        quo.add_term(m.clone(), c.clone());
        r = r - b.mul_monomial(&m, &c);
    }
    Some(quo)
}

fn max_var<V: Ord + Clone + std::fmt::Debug>(a: &P<V>, b: &P<V>) -> Option<V> {
    a.vars().into_iter().chain(b.vars()).max()
}

fn to_univariate<V: Ord + Clone + std::fmt::Debug>(a: &P<V>, x: &V) -> Vec<P<V>> {
    let mut out = vec![P::zero(); a.degree_in(x) as usize + 1];
    for (m, c) in a.terms() {
        let e = m.exponent(x);
        let (_, rest) = m.split(|v| v == x);
        out[e as usize].add_term(rest, c.clone());
    }
    out
}

fn from_univariate<V: Ord + Clone + std::fmt::Debug>(u: &[P<V>], x: &V) -> P<V> {
    let mut out = P::zero();
    for (i, c) in u.iter().enumerate() {
        out = out + c.mul_monomial(&Monomial::var_pow(x.clone(), i as u32), &Q::one());
    }
    out
}

fn trim<V: Ord + Clone + std::fmt::Debug>(u: &mut Vec<P<V>>) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn content<V: Ord + Clone + std::fmt::Debug>(u: &[P<V>]) -> P<V> {
    u.iter().fold(P::zero(), |g, c| gcd(&g, c))
}

fn primitive<V: Ord + Clone + std::fmt::Debug>(u: &[P<V>]) -> Vec<P<V>> {
    let c = content(u);
    u.iter()
        .map(|x| div_exact(x, &c).expect("content divides"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` (up to a nonzero factor from the coefficient ring).
fn prem<V: Ord + Clone + std::fmt::Debug>(a: &[P<V>], b: &[P<V>]) -> Vec<P<V>> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<P<V>> = a.to_vec();
    trim(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<P<V>> = r.iter().map(|c| c.clone() * lb.clone()).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].clone() - bc.clone() * lr.clone();
        }
        trim(&mut next);
        r = next;
    }
    r
}

/// Monic gcd (lexicographic leading coefficient 1); `gcd(0, 0) = 0`.
pub fn gcd<V: Ord + Clone + std::fmt::Debug>(a: &P<V>, b: &P<V>) -> P<V> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return P::one();
    }
    let x = max_var(a, b).expect("nonconstant input has a variable");
    let ua = to_univariate(a, &x);
    let ub = to_univariate(b, &x);
    let c = gcd(&content(&ua), &content(&ub));
    let mut r0 = primitive(&ua);
    let mut r1 = primitive(&ub);
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let g = loop {
        if r1.len() == 1 {
            break vec![P::one()];
        }
        let r = prem(&r0, &r1);
        if r.len() == 1 && r[0].is_zero() {
            break r1;
        }
        r0 = r1;
        r1 = primitive(&r);
    };
    (c * from_univariate(&primitive(&g), &x)).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    type Pu = P<u8>;

    fn v(i: u8) -> Pu {
        Pu::var(i)
    }
    fn k(n: i64) -> Pu {
        Pu::from_q(qi(n))
    }

    #[test]
    fn exact_division() {
        let a = (v(0) + v(1)) * (v(0) - k(2));
        assert_eq!(div_exact(&a, &(v(0) + v(1))), Some(v(0) - k(2)));
        assert_eq!(div_exact(&a, &(v(0) + k(7))), None);
    }

    #[test]
    fn gcd_multivariate() {
        let f = v(0) * v(1) + v(2);
        let g1 = v(0) - v(2);
        let g2 = v(1) * v(1) + k(3);
        let a = f.clone() * g1.clone() * g1.clone();
        let b = f.clone() * g1.clone() * g2.clone();
        assert_eq!(gcd(&a, &b), (f * g1.clone()).monic());
        assert_eq!(gcd(&g1, &g2), Pu::one());
        assert_eq!(gcd(&Pu::zero(), &(v(0).scale(&q(3, 2)))), v(0));
    }

    #[test]
    fn gcd_with_constant_content() {
        let a = v(0).scale(&qi(6)) * v(1);
        let b = v(1).scale(&qi(4));
        assert_eq!(gcd(&a, &b), v(1));
    }
}
