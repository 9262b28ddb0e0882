use std::collections::BTreeMap;

use serde_json::json;

use super::coordinates::{CocycleCoordinates, PhiVar, PolylogWord};
use super::CocycleError;
use crate::algebra::{format_q, Poly, Ring, Q};
use crate::galois::{motivic_generators, PlaceSet};
use crate::shuffle::{Generator, GeneratorSet, ShuffleElement, Word};

pub type PhiPoly = Poly<PhiVar, Q>;

/// Matrix entry `Φ^w_λ(c)`: a product of coordinates for words `ρ τ1 ... τr` against
/// `e1 e0^(n-1)` and for `τ1 ... τk` against `e0^k`; zero otherwise.
pub fn brown_entry<R: Ring>(
    word: &Word,
    lambda: PolylogWord,
    c: &CocycleCoordinates<R>,
) -> Result<R, CocycleError> {
    if word.half_weight() != lambda.half_weight() {
        return Err(CocycleError::WeightMismatch {
            word: word.half_weight(),
            lambda: lambda.half_weight(),
        });
    }
    let letters = word.letters();
    let (head, tail) = match lambda {
        PolylogWord::E0(_) => (None, letters),
        PolylogWord::Li(_) => match letters.split_first() {
            Some((h, t)) => (Some(h), t),
            None => return Ok(R::zero()),
        },
    };
    if tail.iter().any(|g| g.half_weight() != 1) {
        return Ok(R::zero());
    }
    let mut out = match head {
        Some(h) => c.entry(h, PolylogWord::Li(h.half_weight()))?,
        None => R::one(),
    };
    for t in tail {
        out = out * c.entry(t, PolylogWord::LOG)?;
    }
    Ok(out)
}

fn tau_words(taus: &[Generator], r: usize) -> Vec<Vec<Generator>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|w| {
                taus.iter().map(move |t| {
                    let mut v = w.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Words that can carry a nonzero entry against `lambda`.
fn support_words(gens: &GeneratorSet, lambda: PolylogWord) -> Vec<Word> {
    let taus: Vec<Generator> = gens
        .iter()
        .filter(|g| g.half_weight() == 1)
        .cloned()
        .collect();
    let k = lambda.half_weight();
    match lambda {
        PolylogWord::E0(_) => tau_words(&taus, k as usize)
            .into_iter()
            .map(Word::from_letters)
            .collect(),
        PolylogWord::Li(_) => gens
            .iter()
            .filter(|g| g.half_weight() <= k)
            .flat_map(|rho| {
                tau_words(&taus, (k - rho.half_weight()) as usize)
                    .into_iter()
                    .map(move |mut t| {
                        t.insert(0, rho.clone());
                        Word::from_letters(t)
                    })
            })
            .collect(),
    }
}

/// `Li_λ(c) = Σ_w Φ^w_λ(c) f_w` for the targets `log, Li_1, ..., Li_n`.
pub fn cocycle_apply<R: Ring>(
    c: &CocycleCoordinates<R>,
    n: u32,
) -> Result<BTreeMap<PolylogWord, ShuffleElement<R>>, CocycleError> {
    PolylogWord::targets(n)
        .into_iter()
        .map(|t| Ok((t, apply_one(c, t)?)))
        .collect()
}

fn apply_one<R: Ring>(
    c: &CocycleCoordinates<R>,
    lambda: PolylogWord,
) -> Result<ShuffleElement<R>, CocycleError> {
    let mut out = ShuffleElement::zero();
    for w in support_words(c.generators(), lambda) {
        let v = brown_entry(&w, lambda, c)?;
        if !v.is_zero() {
            out.add_term(w, v);
        }
    }
    Ok(out)
}

/// Recovers the coordinates from the images of `log` and `Li_k`.
pub fn extract_coordinates<R: Ring>(
    images: &BTreeMap<PolylogWord, ShuffleElement<R>>,
    gens: &GeneratorSet,
) -> CocycleCoordinates<R> {
    let mut c = CocycleCoordinates::new(gens);
    for (target, image) in images {
        let k = target.half_weight();
        for g in gens.iter().filter(|g| g.half_weight() == k) {
            if let Ok(v) = PhiVar::new(g.clone(), *target) {
                c.insert(v, image.coeff(&Word::letter(g)));
            }
        }
    }
    c
}

/// Images of `log, Li_1, ..., Li_n` with the coordinates left as indeterminates.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationImage {
    gens: GeneratorSet,
    n: u32,
    images: BTreeMap<PolylogWord, ShuffleElement<PhiPoly>>,
}

impl EvaluationImage {
    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn weight(&self) -> u32 {
        self.n
    }

    pub fn image(&self, target: PolylogWord) -> Option<&ShuffleElement<PhiPoly>> {
        self.images.get(&target)
    }

    pub fn images(&self) -> &BTreeMap<PolylogWord, ShuffleElement<PhiPoly>> {
        &self.images
    }

    /// All coordinates appearing in the image.
    pub fn variables(&self) -> Vec<PhiVar> {
        PhiVar::all(&self.gens, self.n)
    }

    /// Specializes the indeterminates to concrete coordinates.
    pub fn substitute<R: Ring>(
        &self,
        c: &CocycleCoordinates<R>,
    ) -> Result<BTreeMap<PolylogWord, ShuffleElement<R>>, CocycleError> {
        let mut out = BTreeMap::new();
        for (t, img) in &self.images {
            let mut e = ShuffleElement::zero();
            for (w, p) in img.terms() {
                let v = p.try_eval(
                    |q| Ok(R::from_rational(q)),
                    |v| {
                        c.get(v)
                            .cloned()
                            .ok_or_else(|| CocycleError::MissingCoordinate(v.to_string()))
                    },
                )?;
                e.add_term(w.clone(), v);
            }
            out.insert(*t, e);
        }
        Ok(out)
    }

    /// Per target, a list of `{monomial, word, coeff}`; single-place images use `w` names.
    pub fn to_json(&self) -> serde_json::Value {
        let single = self.gens.iter().filter(|g| g.half_weight() == 1).count() == 1;
        let name = |v: &PhiVar| if single { v.w_name() } else { v.to_string() };
        let mut obj = serde_json::Map::new();
        for (t, img) in &self.images {
            let mut terms = Vec::new();
            for (w, p) in img.terms() {
                for (m, c) in p.terms() {
                    let mono: Vec<String> = m
                        .pairs()
                        .iter()
                        .rev()
                        .map(|(v, e)| {
                            if *e == 1 {
                                name(v)
                            } else {
                                format!("{}^{e}", name(v))
                            }
                        })
                        .collect();
                    terms.push(json!({
                        "monomial": if mono.is_empty() { "1".to_string() } else { mono.join("*") },
                        "word": w.ids(),
                        "coeff": format_q(c),
                    }));
                }
            }
            let key = match t {
                PolylogWord::E0(_) => "log".to_string(),
                PolylogWord::Li(k) => format!("Li{k}"),
            };
            obj.insert(key, serde_json::Value::Array(terms));
        }
        serde_json::Value::Object(obj)
    }
}

/// The universal evaluation map on the generators `gens`, up to weight `n`.
pub fn theta_sharp(n: u32, gens: &GeneratorSet) -> EvaluationImage {
    let mut c = CocycleCoordinates::<PhiPoly>::new(gens);
    for v in PhiVar::all(gens, n) {
        c.insert(v.clone(), Poly::var(v));
    }
    let images = cocycle_apply(&c, n).expect("every coordinate is present");
    EvaluationImage {
        gens: gens.clone(),
        n,
        images,
    }
}

pub fn eval_universal(n: u32, places: &PlaceSet) -> EvaluationImage {
    theta_sharp(n, &motivic_generators(places, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::galois::table::PeriodEntry;
    use crate::galois::{sigma, tau, BasisExpander, PeriodTable, PolylogSymbol};
    use crate::shuffle::tensor;
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};

    fn w_var(name: &str) -> PhiVar {
        match name {
            "w0" => PhiVar::new(tau(2), PolylogWord::LOG).unwrap(),
            "w1" => PhiVar::new(tau(2), PolylogWord::Li(1)).unwrap(),
            "w2" => PhiVar::new(sigma(3), PolylogWord::Li(3)).unwrap(),
            _ => unreachable!(),
        }
    }

    fn mono(vars: &[&str]) -> PhiPoly {
        vars.iter()
            .fold(PhiPoly::constant(qi(1)), |acc, v| acc * Poly::var(w_var(v)))
    }

    #[test]
    fn universal_images_over_one_place() {
        let img = eval_universal(4, &PlaceSet::new([2]).unwrap());
        let t = tau(2);
        let s = sigma(3);
        let tw = |k: usize| Word::repeat(&t, k);
        let e = |pairs: Vec<(Word, PhiPoly)>| ShuffleElement::from_terms(pairs);
        assert_eq!(
            img.image(PolylogWord::LOG).unwrap(),
            &e(vec![(tw(1), mono(&["w0"]))])
        );
        assert_eq!(
            img.image(PolylogWord::Li(1)).unwrap(),
            &e(vec![(tw(1), mono(&["w1"]))])
        );
        assert_eq!(
            img.image(PolylogWord::Li(2)).unwrap(),
            &e(vec![(tw(2), mono(&["w0", "w1"]))])
        );
        assert_eq!(
            img.image(PolylogWord::Li(3)).unwrap(),
            &e(vec![
                (tw(3), mono(&["w1", "w0", "w0"])),
                (Word::letter(&s), mono(&["w2"]))
            ])
        );
        assert_eq!(
            img.image(PolylogWord::Li(4)).unwrap(),
            &e(vec![
                (tw(4), mono(&["w1", "w0", "w0", "w0"])),
                (
                    Word::from_letters(vec![s.clone(), t.clone()]),
                    mono(&["w0", "w2"])
                ),
            ])
        );
        let j = img.to_json();
        assert_eq!(j["Li2"][0]["monomial"], "w0*w1");
    }

    #[test]
    fn entry_patterns() {
        let c = CocycleCoordinates::from_w(2, qi(5), qi(7), &[qi(11)]);
        let (t, s) = (tau(2), sigma(3));
        let st = Word::from_letters(vec![s.clone(), t.clone()]);
        let ts = Word::from_letters(vec![t.clone(), s.clone()]);
        assert_eq!(brown_entry(&st, PolylogWord::Li(4), &c).unwrap(), qi(55));
        assert_eq!(brown_entry(&ts, PolylogWord::Li(4), &c).unwrap(), qi(0));
        assert_eq!(
            brown_entry(&Word::repeat(&t, 2), PolylogWord::E0(2), &c).unwrap(),
            qi(25)
        );
        assert_eq!(
            brown_entry(&Word::letter(&s), PolylogWord::E0(3), &c).unwrap(),
            qi(0)
        );
        assert!(matches!(
            brown_entry(&st, PolylogWord::Li(3), &c),
            Err(CocycleError::WeightMismatch { word: 4, lambda: 3 })
        ));
    }

    #[test]
    fn entry_on_two_taus_matches_shuffle_square() {
        // The e0^2 entry reproduces the coefficients of log(c)^2 / 2.
        let places = PlaceSet::new([2, 3]).unwrap();
        let gens = motivic_generators(&places, 2);
        let mut c = CocycleCoordinates::zero(&gens, 2);
        c.set("tau_2", PolylogWord::LOG, qi(3)).unwrap();
        c.set("tau_3", PolylogWord::LOG, qi(-2)).unwrap();
        let log = cocycle_apply(&c, 1).unwrap()[&PolylogWord::LOG].clone();
        let sq = log.shuffle(&log).scale(&q(1, 2));
        for w in gens.words_of_weight(2) {
            assert_eq!(
                brown_entry(&w, PolylogWord::E0(2), &c).unwrap(),
                sq.coeff(&w)
            );
        }
    }

    fn random_coords(gens: &GeneratorSet, n: u32, rng: &mut impl Rng) -> CocycleCoordinates<Q> {
        let mut c = CocycleCoordinates::new(gens);
        for v in PhiVar::all(gens, n) {
            c.insert(v, q(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        }
        c
    }

    #[test]
    fn homomorphism_and_round_trip() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for places in [PlaceSet::new([2]).unwrap(), PlaceSet::new([2, 3]).unwrap()] {
            let gens = motivic_generators(&places, 4);
            for _ in 0..5 {
                let c = random_coords(&gens, 4, &mut rng);
                let img = cocycle_apply(&c, 4).unwrap();
                let log = &img[&PolylogWord::LOG];
                for n in 2..=4u32 {
                    let mut rhs = crate::shuffle::TensorElement::<Q>::zero();
                    for i in 1..n {
                        let pw = log.shuffle_pow(i).scale(
                            &Q::from_integer(crate::algebra::rational::factorial(i)).recip(),
                        );
                        rhs = rhs + tensor(&img[&PolylogWord::Li(n - i)], &pw);
                    }
                    assert_eq!(img[&PolylogWord::Li(n)].reduced_coproduct(), rhs);
                }
                assert_eq!(extract_coordinates(&img, &gens), c);
                for (t, e) in &img {
                    for (w, v) in e.terms() {
                        assert_eq!(&brown_entry(w, *t, &c).unwrap(), v);
                    }
                }
                assert_eq!(&eval_universal(4, &places).substitute(&c).unwrap(), &img);
            }
        }
    }

    #[test]
    fn kummer_point_over_two_at_weight_three() {
        let mut table = PeriodTable::new();
        table.insert(PeriodEntry {
            symbol: PolylogSymbol::Li(3, q(1, 2)),
            places: PlaceSet::new([2]).unwrap(),
            primitive: Some(q(7, 8)),
            provenance: "test".into(),
        });
        let places = PlaceSet::new([2]).unwrap();
        let c = crate::cocycle::kappa(&q(1, 2), &places, 3, &table).unwrap();
        assert_eq!(c.entry(&sigma(3), PolylogWord::Li(3)).unwrap(), q(7, 8));
        let img = cocycle_apply(&c, 3).unwrap();
        let expected = ShuffleElement::word(Word::repeat(&tau(2), 3))
            + ShuffleElement::term(Word::letter(&sigma(3)), q(7, 8));
        assert_eq!(img[&PolylogWord::Li(3)], expected);
    }

    #[test]
    fn kappa_images_match_basis_expansion() {
        let places = PlaceSet::new([2, 3]).unwrap();
        let table = PeriodTable::with_axioms();
        let ex = BasisExpander::new(&places, 3, &table);
        let points = [
            qi(-1),
            qi(2),
            qi(3),
            qi(-2),
            qi(4),
            qi(9),
            q(1, 2),
            q(-1, 2),
            qi(-3),
            q(1, 3),
            q(3, 4),
            q(-1, 8),
            q(9, 8),
            q(4, 3),
        ];
        for z in &points {
            let c = crate::cocycle::kappa(z, &places, 2, &table).unwrap();
            let img = cocycle_apply(&c, 2).unwrap();
            for k in 1..=2 {
                assert_eq!(
                    img[&PolylogWord::Li(k)],
                    ex.full_symbol(&PolylogSymbol::Li(k, z.clone())).unwrap(),
                    "Li{k}({z})"
                );
            }
        }
        for z in [qi(-2), qi(3)] {
            let c = crate::cocycle::kappa(&z, &places, 3, &table).unwrap();
            let img = cocycle_apply(&c, 3).unwrap();
            assert_eq!(
                img[&PolylogWord::Li(3)],
                ex.full_symbol(&PolylogSymbol::Li(3, z.clone())).unwrap()
            );
        }
    }

    #[test]
    fn vanishing_log_kills_even_polylogs() {
        let c = CocycleCoordinates::from_w(3, qi(0), q(2, 3), &[q(-5, 2), qi(4)]);
        let img = cocycle_apply(&c, 6).unwrap();
        for k in [2, 4, 6] {
            assert!(img[&PolylogWord::Li(k)].is_zero());
        }
        let zero = CocycleCoordinates::<Q>::zero(c.generators(), 6);
        assert!(cocycle_apply(&zero, 6)
            .unwrap()
            .values()
            .all(|e| e.is_zero()));
    }

    #[test]
    fn missing_coordinate_is_an_error() {
        let gens = motivic_generators(&PlaceSet::new([2]).unwrap(), 3);
        let c = CocycleCoordinates::<Q>::new(&gens);
        assert!(matches!(
            cocycle_apply(&c, 2),
            Err(CocycleError::MissingCoordinate(_))
        ));
    }
}
