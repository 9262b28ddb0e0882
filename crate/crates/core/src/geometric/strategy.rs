use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::groebner::{Buchberger, Guard, Terms};
use super::ideal::{normalize, target_order, FracField, IdealElement, Target};
use super::GeometricError;
use crate::algebra::{Field, Monomial, Poly, Ring};
use crate::cocycle::{eval_universal, EvaluationImage, PhiVar, PolylogWord};
use crate::galois::PlaceSet;
use crate::shuffle::LyndonBasis;

/// The universal evaluation map to be eliminated, with its coefficients in Lyndon form.
#[derive(Clone, Debug)]
pub struct EliminationProblem {
    n: u32,
    places: PlaceSet,
    image: EvaluationImage,
    relations: BTreeMap<Target, Poly<PhiVar, FracField>>,
}

fn target_of(w: PolylogWord) -> Target {
    match w {
        PolylogWord::Li(k) => Target::Li(k),
        PolylogWord::E0(_) => Target::Log,
    }
}

impl EliminationProblem {
    pub fn new(n: u32, places: &PlaceSet) -> Result<Self, GeometricError> {
        if n == 0 {
            return Err(GeometricError::ZeroWeight);
        }
        let image = eval_universal(n, places);
        let mut lyndon = LyndonBasis::new();
        let mut relations = BTreeMap::new();
        for (t, img) in image.images() {
            let mut p: Poly<PhiVar, FracField> = Poly::zero();
            for (w, coeff) in img.terms() {
                let f = FracField::from_poly(lyndon.word_to_poly(w));
                for (m, q) in coeff.terms() {
                    p.add_term(m.clone(), f.scale_q(q));
                }
            }
            relations.insert(target_of(*t), p);
        }
        Ok(EliminationProblem {
            n,
            places: places.clone(),
            image,
            relations,
        })
    }

    pub fn weight(&self) -> u32 {
        self.n
    }

    pub fn places(&self) -> &PlaceSet {
        &self.places
    }

    pub fn image(&self) -> &EvaluationImage {
        &self.image
    }

    pub fn source(&self) -> Vec<PhiVar> {
        self.image.variables()
    }

    pub fn targets(&self) -> Vec<Target> {
        Target::all(self.n)
    }

    /// The image of a target as a polynomial in the coordinates over the fraction field.
    pub fn relation(&self, t: Target) -> &Poly<PhiVar, FracField> {
        &self.relations[&t]
    }

    pub fn solve(
        &self,
        strategy: &dyn EliminationStrategy,
        guard: Guard,
    ) -> Result<Vec<IdealElement>, GeometricError> {
        let mut out = strategy.eliminate(self, guard)?;
        out.retain(|e| !e.is_zero());
        out.sort_by(|a, b| {
            let (la, lb) = (
                a.leading().expect("nonzero").0,
                b.leading().expect("nonzero").0,
            );
            target_order(la, lb)
        });
        out.dedup();
        Ok(out)
    }
}

/// A method for computing generators of the elimination ideal.
pub trait EliminationStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn eliminate(
        &self,
        problem: &EliminationProblem,
        guard: Guard,
    ) -> Result<Vec<IdealElement>, GeometricError>;
}

/// Every registered strategy.
pub fn strategies() -> Vec<Box<dyn EliminationStrategy>> {
    vec![Box::new(GroebnerStrategy), Box::new(StructuredStrategy)]
}

pub fn strategy(name: &str) -> Result<Box<dyn EliminationStrategy>, GeometricError> {
    strategies()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| GeometricError::UnknownStrategy(name.to_string()))
}

/// Generators of the ideal for weight bound `n` over `places`, by Gröbner elimination.
pub fn ck_ideal_generators(n: u32, places: &PlaceSet) -> Result<Vec<IdealElement>, GeometricError> {
    EliminationProblem::new(n, places)?.solve(&GroebnerStrategy, Guard::default())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Var {
    T(Target),
    Phi(PhiVar),
}

fn is_phi(v: &Var) -> bool {
    matches!(v, Var::Phi(_))
}

/// Block order: coordinates first (lex), then targets in the target order.
fn block_order(a: &Monomial<Var>, b: &Monomial<Var>) -> Ordering {
    let (pa, ta) = a.split(is_phi);
    let (pb, tb) = b.split(is_phi);
    pa.cmp(&pb).then_with(|| {
        let w = |m: &Monomial<Var>| {
            m.weighted_degree(|v| if let Var::T(t) = v { t.weight() } else { 0 })
        };
        w(&ta).cmp(&w(&tb)).then_with(|| ta.cmp(&tb))
    })
}

/// Lexicographic Buchberger elimination over the fraction field of the f-word ring.
pub struct GroebnerStrategy;

impl EliminationStrategy for GroebnerStrategy {
    fn name(&self) -> &'static str {
        "groebner"
    }

    fn description(&self) -> &'static str {
        "block-order Buchberger elimination of all coordinates"
    }

    fn eliminate(
        &self,
        problem: &EliminationProblem,
        guard: Guard,
    ) -> Result<Vec<IdealElement>, GeometricError> {
        let mut input: Vec<Terms<Var, FracField>> = Vec::new();
        for t in problem.targets() {
            let mut terms = vec![(Monomial::var(Var::T(t)), FracField::one())];
            for (m, c) in problem.relation(t).terms() {
                terms.push((m.map_vars(|v| Var::Phi(v.clone())), -c.clone()));
            }
            input.push(terms);
        }
        let order = block_order;
        let mut b = Buchberger::<Var, FracField>::new(&order, guard);
        let basis = b.basis(input).map_err(GeometricError::Guard)?;
        let mut out = Vec::new();
        for g in basis {
            if g.iter().any(|(m, _)| m.vars().any(is_phi)) {
                continue;
            }
            let p = Poly::from_terms(g.into_iter().map(|(m, c)| {
                (
                    m.map_vars(|v| {
                        if let Var::T(t) = v {
                            *t
                        } else {
                            unreachable!("filtered")
                        }
                    }),
                    c,
                )
            }));
            out.push(normalize(&p));
        }
        Ok(out)
    }
}

/// Solves the coordinates from `log`, `Li_1` and the odd `Li_k`, then substitutes into the rest.
pub struct StructuredStrategy;

impl EliminationStrategy for StructuredStrategy {
    fn name(&self) -> &'static str {
        "structured"
    }

    fn description(&self) -> &'static str {
        "triangular solve for the coordinates, single place only"
    }

    fn eliminate(
        &self,
        problem: &EliminationProblem,
        _guard: Guard,
    ) -> Result<Vec<IdealElement>, GeometricError> {
        let not_applicable = |reason: String| GeometricError::NotApplicable {
            strategy: self.name().into(),
            reason,
        };
        if problem.places().len() != 1 {
            return Err(not_applicable("needs exactly one place".into()));
        }
        let mut solved: BTreeMap<PhiVar, Poly<Target, FracField>> = BTreeMap::new();
        let mut used = Vec::new();
        let solvers: Vec<Target> = problem
            .targets()
            .into_iter()
            .filter(|t| match t {
                Target::Log | Target::Li(1) => true,
                Target::Li(k) => k % 2 == 1,
            })
            .collect();
        for t in solvers {
            let rel = problem.relation(t);
            let fresh: Vec<PhiVar> = rel
                .vars()
                .into_iter()
                .filter(|v| !solved.contains_key(v))
                .collect();
            let [v] = fresh.as_slice() else {
                return Err(not_applicable(format!(
                    "{t} introduces {} new coordinates",
                    fresh.len()
                )));
            };
            let mut lin = FracField::zero();
            let mut rest: Poly<PhiVar, FracField> = Poly::zero();
            for (m, c) in rel.terms() {
                match m.exponent(v) {
                    0 => rest.add_term(m.clone(), c.clone()),
                    1 if m.total_degree() == 1 => lin = lin + c.clone(),
                    _ => return Err(not_applicable(format!("{v} is not linear in {t}"))),
                }
            }
            let inv = lin
                .try_inv()
                .ok_or_else(|| not_applicable(format!("{v} does not occur in {t}")))?;
            let rest_t = rest.eval(|c| Poly::constant(c.clone()), |w| solved[w].clone());
            let sol = (Poly::var(t) - rest_t).scale(&inv);
            solved.insert(v.clone(), sol);
            used.push(t);
        }
        let mut out = Vec::new();
        for t in problem.targets().into_iter().filter(|t| !used.contains(t)) {
            let img = problem
                .relation(t)
                .eval(|c| Poly::constant(c.clone()), |w| solved[w].clone());
            out.push(normalize(&(Poly::var(t) - img)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::galois::{sigma, tau};
    use crate::geometric::{specialize_coefficients, verify_vanishing, CoeffPoly};
    use crate::shuffle::{GeneratorSet, Word};

    use crate::geometric::reference::{weight_four, weight_two};

    #[test]
    fn generators_at_weights_two_three_four() {
        for l in [2u64, 3] {
            let places = PlaceSet::new([l]).unwrap();
            for s in strategies() {
                let p2 = EliminationProblem::new(2, &places)
                    .unwrap()
                    .solve(s.as_ref(), Guard::default())
                    .unwrap();
                assert_eq!(p2, vec![weight_two()], "{}", s.name());
                let p3 = EliminationProblem::new(3, &places)
                    .unwrap()
                    .solve(s.as_ref(), Guard::default())
                    .unwrap();
                assert_eq!(p3, vec![weight_two()], "{}", s.name());
                let p4 = EliminationProblem::new(4, &places)
                    .unwrap()
                    .solve(s.as_ref(), Guard::default())
                    .unwrap();
                assert_eq!(p4, vec![weight_two(), weight_four(l)], "{}", s.name());
            }
        }
        assert_eq!(weight_two().to_string(), "Li2 - 1/2*log*Li1");
    }

    #[test]
    fn outputs_vanish_and_normalization_is_idempotent() {
        let places = PlaceSet::new([3]).unwrap();
        for e in ck_ideal_generators(4, &places).unwrap() {
            assert!(verify_vanishing(&e, 4, &places));
            let frac = e.poly().map_coeffs(|c| FracField::from_poly(c.clone()));
            assert_eq!(normalize(&frac), e);
            assert!(e.is_homogeneous());
        }
        assert!(!verify_vanishing(
            &IdealElement::new(Poly::var(Target::Li(2))),
            4,
            &places
        ));
        assert!(verify_vanishing(
            &IdealElement::new(Poly::zero()),
            4,
            &places
        ));
        let scaled = weight_four(3).poly().scale(&CoeffPoly::constant(qi(-6)));
        assert_eq!(
            normalize(&scaled.map_coeffs(|c| FracField::from_poly(c.clone()))),
            weight_four(3)
        );
    }

    #[test]
    fn json_round_trip() {
        let gens = GeneratorSet::new(vec![tau(3), sigma(3)]).unwrap();
        let e = weight_four(3);
        let j = e.to_json();
        assert_eq!(j["weight"], 8);
        assert_eq!(j["targetWeight"], 4);
        assert_eq!(IdealElement::from_json(&j, &gens).unwrap(), e);
    }

    #[test]
    fn structured_rejects_two_places() {
        let p = EliminationProblem::new(2, &PlaceSet::new([2, 3]).unwrap()).unwrap();
        assert!(matches!(
            p.solve(&StructuredStrategy, Guard::default()),
            Err(GeometricError::NotApplicable { .. })
        ));
        assert!(matches!(
            strategy("magic"),
            Err(GeometricError::UnknownStrategy(_))
        ));
    }

    #[test]
    fn specialization_over_three() {
        use crate::galois::table::PeriodEntry;
        use crate::galois::{
            f_sigma_tau_expression, MotivicExpression, PeriodTable, PolylogSymbol,
        };
        let mut table = PeriodTable::with_axioms();
        table.insert(PeriodEntry {
            symbol: PolylogSymbol::Li(3, qi(9)),
            places: PlaceSet::new([2, 3]).unwrap(),
            primitive: Some(q(-26, 3)),
            provenance: "test".into(),
        });
        let s3 = PlaceSet::new([3]).unwrap();
        let fst = f_sigma_tau_expression(&s3, &table).unwrap().expression;
        let mut a = BTreeMap::new();
        a.insert(
            Word::letter(&tau(3)),
            MotivicExpression::log(&qi(3)).unwrap(),
        );
        a.insert(Word::letter(&sigma(3)), MotivicExpression::zeta(3).unwrap());
        a.insert(Word::from_letters(vec![sigma(3), tau(3)]), fst.clone());
        let got = specialize_coefficients(&weight_four(3), &a).unwrap();
        let zl = (MotivicExpression::zeta(3).unwrap() * MotivicExpression::log(&qi(3)).unwrap())
            .poly()
            .clone();
        let x = (MotivicExpression::li(4, &qi(3)).unwrap().scale(&q(18, 13))
            - MotivicExpression::li(4, &qi(9)).unwrap().scale(&q(3, 52)))
        .poly()
        .clone();
        let tt = |x: Target| Poly::<Target, crate::galois::SymbolPoly>::var(x);
        let k =
            |p: crate::galois::SymbolPoly| Poly::<Target, crate::galois::SymbolPoly>::constant(p);
        let expected = k(zl.clone()) * tt(Target::Li(4))
            - k(x.clone()) * tt(Target::Log) * tt(Target::Li(3))
            - k(crate::galois::SymbolPoly::constant(q(1, 24)))
                * tt(Target::Log)
                * tt(Target::Log)
                * tt(Target::Log)
                * tt(Target::Li(1))
                * k(zl - x.scale(&qi(4)));
        assert_eq!(got.poly, expected);
        let w2 = specialize_coefficients(&weight_two(), &BTreeMap::new()).unwrap();
        assert_eq!(w2.poly.len(), 2);
        a.remove(&Word::letter(&sigma(3)));
        assert!(matches!(
            specialize_coefficients(&weight_four(3), &a),
            Err(GeometricError::Uncovered(_))
        ));
    }
}
