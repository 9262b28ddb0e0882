//! Recursive expansion of symbols in the f-word basis.

use num_traits::One;

use super::expression::{MotivicExpression, SymbolPoly};
use super::symbol::{motivic_generators, sigma, tau, PlaceSet, PolylogSymbol};
use super::table::PeriodTable;
use super::GaloisError;
use crate::algebra::rational::{factorial, ord};
use crate::algebra::Q;
use crate::shuffle::{tensor, GeneratorSet, ShuffleElement, TensorElement, Word};

/// `Σ_ℓ ord_ℓ(z) f_{τ_ℓ}`.
pub fn kummer_degree_one(z: &Q, places: &PlaceSet) -> Result<ShuffleElement<Q>, GaloisError> {
    places.check_unit(z)?;
    let mut out = ShuffleElement::zero();
    for l in places.primes() {
        let v = ord(z, l);
        if v != 0 {
            out.add_term(Word::letter(&tau(l)), Q::from_integer(v.into()));
        }
    }
    Ok(out)
}

/// Primitive (single-letter) part of an expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum Primitive {
    Exact(ShuffleElement<Q>),
    /// Coefficient of the named generator not yet known.
    Unknown(crate::shuffle::Generator),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub symbol: PolylogSymbol,
    /// The part without single-letter words; determined by `Δ′`.
    pub non_primitive: ShuffleElement<Q>,
    pub primitive: Primitive,
}

impl Expansion {
    pub fn is_complete(&self) -> bool {
        matches!(self.primitive, Primitive::Exact(_))
    }

    pub fn full(&self) -> Option<ShuffleElement<Q>> {
        match &self.primitive {
            Primitive::Exact(p) => Some(self.non_primitive.clone() + p.clone()),
            Primitive::Unknown(_) => None,
        }
    }
}

/// Inverts `Δ′` on elements without single-letter terms: `f_u ⊗ f_v ↦ f_{uv}` for single letters `u`.
pub fn first_letter_split(t: &TensorElement<Q>) -> ShuffleElement<Q> {
    let mut b = ShuffleElement::zero();
    for ((u, v), c) in t.terms() {
        if u.len() == 1 && !v.is_empty() {
            b.add_term(u.concat(v), c.clone());
        }
    }
    b
}

pub struct BasisExpander<'a> {
    places: PlaceSet,
    gens: GeneratorSet,
    table: &'a PeriodTable,
}

impl<'a> BasisExpander<'a> {
    pub fn new(places: &PlaceSet, weight_bound: u32, table: &'a PeriodTable) -> Self {
        BasisExpander {
            places: places.clone(),
            gens: motivic_generators(places, weight_bound),
            table,
        }
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn table(&self) -> &PeriodTable {
        self.table
    }

    fn sigma_letter(&self, n: u32) -> Result<crate::shuffle::Generator, GaloisError> {
        let g = sigma(n);
        if self.gens.contains(&g) {
            Ok(g)
        } else {
            Err(GaloisError::MissingGenerator(g.id().to_string()))
        }
    }

    pub fn expand_symbol(&self, sym: &PolylogSymbol) -> Result<Expansion, GaloisError> {
        sym.validate()?;
        match sym {
            PolylogSymbol::Log(z) => Ok(Expansion {
                symbol: sym.clone(),
                non_primitive: ShuffleElement::zero(),
                primitive: Primitive::Exact(kummer_degree_one(z, &self.places)?),
            }),
            PolylogSymbol::Zeta(n) => {
                let p = if n % 2 == 1 {
                    ShuffleElement::letter(&self.sigma_letter(*n)?)
                } else {
                    ShuffleElement::zero()
                };
                Ok(Expansion {
                    symbol: sym.clone(),
                    non_primitive: ShuffleElement::zero(),
                    primitive: Primitive::Exact(p),
                })
            }
            PolylogSymbol::Li(1, z) => {
                let e = MotivicExpression::li(1, z)?;
                Ok(Expansion {
                    symbol: sym.clone(),
                    non_primitive: ShuffleElement::zero(),
                    primitive: Primitive::Exact(self.basis_form(e.poly())?),
                })
            }
            PolylogSymbol::Li(n, z) => {
                self.places.check_unit(z)?;
                self.places.check_unit(&(Q::one() - z))?;
                let t = self.li_coproduct(*n, z)?;
                let b = first_letter_split(&t);
                if b.reduced_coproduct() != t {
                    return Err(GaloisError::Inconsistent(sym.to_string()));
                }
                let primitive = if n % 2 == 0 {
                    Primitive::Exact(ShuffleElement::zero())
                } else {
                    let g = self.sigma_letter(*n)?;
                    match self.table.primitive(&self.places, sym) {
                        Some(c) => Primitive::Exact(ShuffleElement::term(Word::letter(&g), c)),
                        None => Primitive::Unknown(g),
                    }
                };
                Ok(Expansion {
                    symbol: sym.clone(),
                    non_primitive: b,
                    primitive,
                })
            }
        }
    }

    /// `Δ′ Li_n(z)` in the word basis, using expansions of lower-weight symbols.
    pub fn li_coproduct(&self, n: u32, z: &Q) -> Result<TensorElement<Q>, GaloisError> {
        let k = kummer_degree_one(z, &self.places)?;
        let mut t = TensorElement::zero();
        for i in 1..n {
            let left = self.basis_form(MotivicExpression::li(n - i, z)?.poly())?;
            let right = k
                .shuffle_pow(i)
                .scale(&Q::from_integer(factorial(i)).recip());
            t = t + tensor(&left, &right);
        }
        Ok(t)
    }

    pub fn full_symbol(&self, sym: &PolylogSymbol) -> Result<ShuffleElement<Q>, GaloisError> {
        self.expand_symbol(sym)?
            .full()
            .ok_or_else(|| GaloisError::UnknownPrimitive {
                symbol: sym.to_string(),
                places: self.places.to_string(),
            })
    }

    /// Exact basis form; every primitive coefficient involved must be known.
    pub fn basis_form(&self, p: &SymbolPoly) -> Result<ShuffleElement<Q>, GaloisError> {
        p.try_eval(
            |c| Ok(ShuffleElement::constant(c.clone())),
            |s| self.full_symbol(s),
        )
    }

    /// Basis form modulo single letters: primitive parts of linear symbol terms are dropped.
    pub fn basis_form_mod_primitive(
        &self,
        p: &SymbolPoly,
    ) -> Result<ShuffleElement<Q>, GaloisError> {
        let mut out = ShuffleElement::zero();
        for (m, c) in p.terms() {
            let part = match m.pairs() {
                [(s, 1)] => self.expand_symbol(s)?.non_primitive,
                _ => self.basis_form(&SymbolPoly::term(m.clone(), Q::one()))?,
            };
            out = out + part.scale(c);
        }
        Ok(out)
    }

    pub fn attach(&self, e: MotivicExpression) -> Result<MotivicExpression, GaloisError> {
        let b = self.basis_form(e.poly())?;
        Ok(e.with_basis_form(b))
    }

    /// Reduced coproduct of an expression via its basis form (modulo primitives).
    pub fn reduced_coproduct(&self, p: &SymbolPoly) -> Result<TensorElement<Q>, GaloisError> {
        Ok(self.basis_form_mod_primitive(p)?.reduced_coproduct())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::galois::coproduct::reduced_coproduct as symbolic_reduced;
    use crate::shuffle::GeneratorSet;
    use num_traits::Zero;

    fn w(g: &GeneratorSet, ids: &[&str]) -> Word {
        Word::from_letters(ids.iter().map(|i| g.get(i).unwrap().clone()).collect())
    }

    #[test]
    fn kummer_examples() {
        let s23 = PlaceSet::new([2, 3]).unwrap();
        assert_eq!(
            kummer_degree_one(&qi(9), &s23).unwrap(),
            ShuffleElement::term(Word::letter(&tau(3)), qi(2))
        );
        assert!(kummer_degree_one(&qi(-1), &s23).unwrap().is_zero());
        let s2 = PlaceSet::new([2]).unwrap();
        assert_eq!(
            kummer_degree_one(&q(1, 2), &s2).unwrap(),
            ShuffleElement::term(Word::letter(&tau(2)), qi(-1))
        );
        assert_eq!(
            kummer_degree_one(&qi(6), &s2),
            Err(GaloisError::NotSUnit {
                z: "6".into(),
                prime: 3
            })
        );
    }

    #[test]
    fn li3_half_leaves_zeta_coefficient_open() {
        let table = PeriodTable::new();
        let s2 = PlaceSet::new([2]).unwrap();
        let ex = BasisExpander::new(&s2, 4, &table);
        let e = ex.expand_symbol(&PolylogSymbol::Li(3, q(1, 2))).unwrap();
        let g = ex.generators();
        assert_eq!(
            e.non_primitive,
            ShuffleElement::word(w(g, &["tau_2", "tau_2", "tau_2"]))
        );
        assert_eq!(e.primitive, Primitive::Unknown(sigma(3)));
    }

    #[test]
    fn li2_minus_two_over_six() {
        let table = PeriodTable::new();
        let s = PlaceSet::new([2, 3]).unwrap();
        let ex = BasisExpander::new(&s, 4, &table);
        let e = ex.full_symbol(&PolylogSymbol::Li(2, qi(-2))).unwrap();
        assert_eq!(
            e,
            ShuffleElement::word(w(ex.generators(), &["tau_3", "tau_2"])).scale(&qi(-1))
        );
    }

    #[test]
    fn li3_nine_minus_twelve_li3_three_is_primitive() {
        let table = PeriodTable::new();
        let s = PlaceSet::new([2, 3]).unwrap();
        let ex = BasisExpander::new(&s, 4, &table);
        let d = MotivicExpression::li(3, &qi(9)).unwrap()
            - MotivicExpression::li(3, &qi(3)).unwrap().scale(&qi(12));
        assert!(ex.basis_form_mod_primitive(d.poly()).unwrap().is_zero());
    }

    #[test]
    fn word_basis_coproduct_matches_symbolic_one() {
        let table = PeriodTable::with_axioms();
        let s = PlaceSet::new([2, 3]).unwrap();
        let ex = BasisExpander::new(&s, 4, &table);
        for sym in [
            PolylogSymbol::Li(3, qi(3)),
            PolylogSymbol::Li(2, qi(9)),
            PolylogSymbol::Li(4, qi(3)),
        ] {
            let p = SymbolPoly::var(sym.clone());
            let symbolic = symbolic_reduced(&p).unwrap();
            let mut via_symbols = TensorElement::zero();
            for ((a, b), c) in symbolic.terms() {
                let l = ex.basis_form(&SymbolPoly::term(a.clone(), qi(1))).unwrap();
                let r = ex.basis_form(&SymbolPoly::term(b.clone(), qi(1))).unwrap();
                via_symbols = via_symbols + tensor(&l, &r).scale(c);
            }
            assert_eq!(ex.reduced_coproduct(&p).unwrap(), via_symbols, "{sym}");
        }
    }

    #[test]
    fn unknown_lower_weight_is_reported() {
        let table = PeriodTable::new();
        let s2 = PlaceSet::new([2]).unwrap();
        let ex = BasisExpander::new(&s2, 4, &table);
        let err = ex
            .expand_symbol(&PolylogSymbol::Li(4, q(1, 2)))
            .unwrap_err();
        assert!(matches!(err, GaloisError::UnknownPrimitive { .. }));
    }
}
