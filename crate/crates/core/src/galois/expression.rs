//! Polynomials in motivic symbols.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::symbol::PolylogSymbol;
use super::GaloisError;
use crate::algebra::rational::{ord, support};
use crate::algebra::{format_q, qi, Monomial, Poly, Q};
use crate::shuffle::ShuffleElement;

pub type SymbolPoly = Poly<PolylogSymbol, Q>;
pub type SymbolMonomial = Monomial<PolylogSymbol>;

/// A polynomial in symbols, optionally paired with its form in the f-word basis.
#[derive(Clone, Debug)]
pub struct MotivicExpression {
    poly: SymbolPoly,
    basis_form: Option<ShuffleElement<Q>>,
}

impl MotivicExpression {
    pub fn from_poly(poly: SymbolPoly) -> Self {
        MotivicExpression {
            poly,
            basis_form: None,
        }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(SymbolPoly::from_q(c))
    }

    pub fn symbol(s: PolylogSymbol) -> Self {
        Self::from_poly(SymbolPoly::var(s))
    }

    /// `log(z) = Σ_ℓ ord_ℓ(z) log(ℓ)`; torsion is dropped.
    pub fn log(z: &Q) -> Result<Self, GaloisError> {
        if z.is_zero() {
            return Err(GaloisError::ZeroArgument);
        }
        let mut p = SymbolPoly::zero();
        for l in support(z) {
            p.add_term(
                Monomial::var(PolylogSymbol::Log(qi(l as i64))),
                qi(ord(z, l)),
            );
        }
        Ok(Self::from_poly(p))
    }

    /// `Li_n(z)`, with `Li_1(z) = −log(1 − z)` applied eagerly.
    pub fn li(n: u32, z: &Q) -> Result<Self, GaloisError> {
        let s = PolylogSymbol::Li(n, z.clone());
        s.validate()?;
        if n == 1 {
            return Ok(-Self::log(&(Q::one() - z))?);
        }
        Ok(Self::symbol(s))
    }

    pub fn zeta(n: u32) -> Result<Self, GaloisError> {
        let s = PolylogSymbol::Zeta(n);
        s.validate()?;
        Ok(Self::symbol(s))
    }

    /// Canonical expression of a single symbol.
    pub fn canonical(s: &PolylogSymbol) -> Result<Self, GaloisError> {
        match s {
            PolylogSymbol::Log(z) => Self::log(z),
            PolylogSymbol::Li(n, z) => Self::li(*n, z),
            PolylogSymbol::Zeta(n) => Self::zeta(*n),
        }
    }

    pub fn poly(&self) -> &SymbolPoly {
        &self.poly
    }

    pub fn basis_form(&self) -> Option<&ShuffleElement<Q>> {
        self.basis_form.as_ref()
    }

    pub fn with_basis_form(mut self, b: ShuffleElement<Q>) -> Self {
        self.basis_form = Some(b);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &Q) -> Self {
        MotivicExpression {
            poly: self.poly.scale(c),
            basis_form: self.basis_form.as_ref().map(|b| b.scale(c)),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Weight if homogeneous (symbols weighted by their weight).
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self
            .poly
            .terms()
            .map(|(m, _)| m.weighted_degree(|s| s.weight()));
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }
}

/// Equality of the symbolic polynomials; attached basis forms are derived data.
impl PartialEq for MotivicExpression {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Zero for MotivicExpression {
    fn zero() -> Self {
        MotivicExpression {
            poly: SymbolPoly::zero(),
            basis_form: Some(ShuffleElement::zero()),
        }
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for MotivicExpression {
    fn one() -> Self {
        MotivicExpression {
            poly: SymbolPoly::one(),
            basis_form: Some(ShuffleElement::unit()),
        }
    }
}

fn combine(
    a: Option<ShuffleElement<Q>>,
    b: Option<ShuffleElement<Q>>,
    f: impl Fn(ShuffleElement<Q>, ShuffleElement<Q>) -> ShuffleElement<Q>,
) -> Option<ShuffleElement<Q>> {
    Some(f(a?, b?))
}

impl Add for MotivicExpression {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        MotivicExpression {
            poly: self.poly + rhs.poly,
            basis_form: combine(self.basis_form, rhs.basis_form, |x, y| x + y),
        }
    }
}

impl Sub for MotivicExpression {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for MotivicExpression {
    type Output = Self;
    fn neg(self) -> Self {
        MotivicExpression {
            poly: -self.poly,
            basis_form: self.basis_form.map(|b| -b),
        }
    }
}

impl Mul for MotivicExpression {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        MotivicExpression {
            poly: self.poly * rhs.poly,
            basis_form: combine(self.basis_form, rhs.basis_form, |x, y| x.shuffle(&y)),
        }
    }
}

/// Readable rendering, highest monomials first.
pub fn render_symbol_poly(p: &SymbolPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .pairs()
            .iter()
            .rev()
            .map(|(s, e)| {
                if *e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&format_q(&a));
        } else if a.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&format!("{}*{}", format_q(&a), factors.join("*")));
        }
    }
    out
}

impl fmt::Display for MotivicExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_symbol_poly(&self.poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn eager_logarithm_rules() {
        let l9 = MotivicExpression::log(&qi(9)).unwrap();
        let l3 = MotivicExpression::log(&qi(3)).unwrap();
        assert_eq!(l9, l3.scale(&qi(2)));
        assert!(MotivicExpression::log(&qi(-1)).unwrap().is_zero());
        let li1 = MotivicExpression::li(1, &qi(-2)).unwrap();
        assert_eq!(li1, -l3);
        assert!(MotivicExpression::li(2, &qi(1)).is_err());
        assert_eq!(
            MotivicExpression::log(&q(1, 2)).unwrap().to_string(),
            "-log(2)"
        );
    }

    #[test]
    fn rendering_and_weight() {
        let e = MotivicExpression::li(4, &q(1, 2)).unwrap()
            + MotivicExpression::log(&qi(2))
                .unwrap()
                .pow(4)
                .scale(&q(1, 24));
        assert_eq!(e.weight(), Some(4));
        assert_eq!(e.to_string(), "Li4(1/2) + 1/24*log(2)^4");
    }
}
