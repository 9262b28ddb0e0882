//! The Goncharov reduced coproduct on symbol polynomials.

use num_traits::One;

use super::expression::{MotivicExpression, SymbolMonomial, SymbolPoly};
use super::symbol::PolylogSymbol;
use super::GaloisError;
use crate::algebra::rational::factorial;
use crate::algebra::{Monomial, Q};
use crate::shuffle::{Tensor2, Tensor3};

/// Tensor of symbol polynomials in the monomial basis.
pub type SymbolTensor = Tensor2<SymbolMonomial, Q>;
pub type SymbolTensor3 = Tensor3<SymbolMonomial, Q>;

pub fn tensor_polys(a: &SymbolPoly, b: &SymbolPoly) -> SymbolTensor {
    let mut t = SymbolTensor::zero();
    for (m, c) in a.terms() {
        for (n, d) in b.terms() {
            t.add_term((m.clone(), n.clone()), c * d);
        }
    }
    t
}

fn tensor_mul(s: &SymbolTensor, t: &SymbolTensor) -> SymbolTensor {
    let mut out = SymbolTensor::zero();
    for ((a, b), x) in s.terms() {
        for ((c, d), y) in t.terms() {
            out.add_term((a.mul(c), b.mul(d)), x * y);
        }
    }
    out
}

/// `Δ′` of a single symbol: zero on `log` and `ζ`, the polylog formula on `Li_n`.
pub fn goncharov_reduced_coproduct(sym: &PolylogSymbol) -> Result<SymbolTensor, GaloisError> {
    sym.validate()?;
    match sym {
        PolylogSymbol::Log(_) | PolylogSymbol::Zeta(_) => Ok(SymbolTensor::zero()),
        PolylogSymbol::Li(n, z) => {
            let log_z = MotivicExpression::log(z)?;
            let mut t = SymbolTensor::zero();
            for i in 1..*n {
                let left = MotivicExpression::li(n - i, z)?;
                let right = log_z.pow(i).scale(&Q::from_integer(factorial(i)).recip());
                t = t + tensor_polys(left.poly(), right.poly());
            }
            Ok(t)
        }
    }
}

fn unit_tensor() -> SymbolTensor {
    let mut t = SymbolTensor::zero();
    t.add_term((Monomial::one(), Monomial::one()), Q::one());
    t
}

/// Full coproduct of a monomial, using multiplicativity.
pub fn full_coproduct_monomial(m: &SymbolMonomial) -> Result<SymbolTensor, GaloisError> {
    let mut acc = unit_tensor();
    for (s, e) in m.pairs() {
        let mut ds = goncharov_reduced_coproduct(s)?;
        ds.add_term((Monomial::var(s.clone()), Monomial::one()), Q::one());
        ds.add_term((Monomial::one(), Monomial::var(s.clone())), Q::one());
        for _ in 0..*e {
            acc = tensor_mul(&acc, &ds);
        }
    }
    Ok(acc)
}

pub fn full_coproduct(p: &SymbolPoly) -> Result<SymbolTensor, GaloisError> {
    let mut out = SymbolTensor::zero();
    for (m, c) in p.terms() {
        out = out + full_coproduct_monomial(m)?.scale(c);
    }
    Ok(out)
}

pub fn reduced_coproduct(p: &SymbolPoly) -> Result<SymbolTensor, GaloisError> {
    let one = SymbolPoly::one();
    Ok(full_coproduct(p)? - tensor_polys(p, &one) - tensor_polys(&one, p))
}

fn reduced_monomial(m: &SymbolMonomial) -> SymbolTensor {
    reduced_coproduct(&SymbolPoly::term(m.clone(), Q::one()))
        .expect("symbols in tensors were validated")
}

/// `(Δ′⊗id − id⊗Δ′)∘Δ′(p)`, which vanishes by coassociativity.
pub fn coassociativity_defect(p: &SymbolPoly) -> Result<SymbolTensor3, GaloisError> {
    let t = reduced_coproduct(p)?;
    Ok(t.expand_left(reduced_monomial) - t.expand_right(reduced_monomial))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn lg(n: i64) -> SymbolPoly {
        MotivicExpression::log(&qi(n)).unwrap().poly().clone()
    }

    #[test]
    fn li2_of_minus_two() {
        let t = goncharov_reduced_coproduct(&PolylogSymbol::Li(2, qi(-2))).unwrap();
        assert_eq!(t, tensor_polys(&-lg(3), &lg(2)));
    }

    #[test]
    fn li3_of_nine_bidegree_one_two() {
        let t = goncharov_reduced_coproduct(&PolylogSymbol::Li(3, qi(9))).unwrap();
        let part = t.filter(|a, b| {
            a.weighted_degree(|s| s.weight()) == 1 && b.weighted_degree(|s| s.weight()) == 2
        });
        assert_eq!(part, tensor_polys(&lg(2), &(lg(3) * lg(3))).scale(&qi(-6)));
    }

    #[test]
    fn log_and_zeta_are_primitive() {
        assert!(goncharov_reduced_coproduct(&PolylogSymbol::Log(qi(5)))
            .unwrap()
            .is_zero());
        assert!(goncharov_reduced_coproduct(&PolylogSymbol::Zeta(3))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn coassociativity_on_samples() {
        for (n, z) in [(4, q(1, 2)), (4, qi(9)), (3, qi(-3)), (4, qi(-1))] {
            let p = MotivicExpression::li(n, &z).unwrap();
            let prod = p.clone() * MotivicExpression::log(&qi(3)).unwrap();
            assert!(coassociativity_defect(p.poly()).unwrap().is_zero());
            assert!(coassociativity_defect(prod.poly()).unwrap().is_zero());
        }
    }
}
