//! End-to-end runs: period table resolution, ideal generators, Coleman functions and loci.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde_json::json;

use crate::algebra::{format_q, Matrix, Q};
use crate::galois::certificate::weight3_reference;
use crate::galois::{
    f_sigma_tau_expression, sigma, BasisExpander, GaloisError, MotivicExpression, PeriodEntry,
    PeriodTable, PlaceSet, PolylogSymbol,
};
use crate::geometric::{
    specialize_coefficients, strategy, verify_vanishing, EliminationProblem, GeometricError, Guard,
    IdealElement, SpecializedElement,
};
use crate::loci::{
    assemble_coleman, find_zeros, restrict_locus, s3_symmetrize, ColemanFunction, LociError, Locus,
};
use crate::padic::{balanced_bounds, rational_reconstruct, PadicContext, PadicError, PadicPolicy};
use crate::shuffle::{ShuffleElement, Word};

/// Primes at which numerically recognized period coefficients must agree.
pub const RECOGNITION_PRIMES: [u64; 2] = [5, 7];
/// Height cap for recognized coefficients.
pub const RECOGNITION_CAP: u64 = 1000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Geometric(#[from] GeometricError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Loci(#[from] LociError),
    #[error(transparent)]
    Cocycle(#[from] crate::cocycle::CocycleError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("recognition failed: {0}")]
    Recognition(String),
    #[error("unknown verify suite {0:?}")]
    UnknownSuite(String),
}

/// Shared run settings.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub places: PlaceSet,
    pub p: u64,
    pub n: u32,
    pub policy: PadicPolicy,
    pub strategy: String,
    pub guard: Guard,
}

impl RunConfig {
    pub fn new(places: PlaceSet, p: u64, n: u32, policy: PadicPolicy) -> Self {
        RunConfig {
            places,
            p,
            n,
            policy,
            strategy: "groebner".into(),
            guard: Guard::default(),
        }
    }

    /// Numerical runs need `p ∉ S`, `p > 3` and `n ≤ 4`.
    pub fn check_numeric(&self) -> Result<(), PipelineError> {
        if self.places.contains(self.p) {
            return Err(PipelineError::Config(format!(
                "p = {} lies in S = {}",
                self.p, self.places
            )));
        }
        if self.p <= 3 {
            return Err(PipelineError::Config(format!(
                "p = {} must exceed 3",
                self.p
            )));
        }
        if self.n == 0 || self.n > 4 {
            return Err(PipelineError::Config(format!(
                "certified runs need 1 ≤ n ≤ 4, got {}",
                self.n
            )));
        }
        Ok(())
    }
}

fn single_letters_removed(x: &ShuffleElement<Q>) -> ShuffleElement<Q> {
    ShuffleElement::from_terms(
        x.terms()
            .filter(|(w, _)| w.len() != 1)
            .map(|(w, c)| (w.clone(), c.clone())),
    )
}

/// A weight-3 primitive coefficient recognized from p-adic values.
pub fn recognize_weight3(
    table: &PeriodTable,
    sym: &PolylogSymbol,
    places: &PlaceSet,
    policy: &PadicPolicy,
) -> Result<PeriodEntry, PipelineError> {
    let ex = BasisExpander::new(places, 3, table);
    let target = ex.expand_symbol(sym)?.non_primitive;
    let refs = weight3_reference(places)?;
    let forms: Vec<ShuffleElement<Q>> = refs
        .iter()
        .map(|r| ex.basis_form(r.poly()))
        .collect::<Result<_, _>>()?;
    let stripped: Vec<ShuffleElement<Q>> = forms.iter().map(single_letters_removed).collect();
    let mut words: Vec<Word> = stripped
        .iter()
        .chain([&target])
        .flat_map(|f| f.terms().map(|(w, _)| w.clone()))
        .collect();
    words.sort();
    words.dedup();
    let a = Matrix::from_columns(
        stripped
            .iter()
            .map(|f| words.iter().map(|w| f.coeff(w)).collect())
            .collect(),
    );
    let b: Vec<Q> = words.iter().map(|w| target.coeff(w)).collect();
    let x = a.solve(&b).ok_or_else(|| {
        PipelineError::Recognition(format!(
            "{sym} is not reducible to primitives over {places}"
        ))
    })?;
    let s3 = Word::letter(&sigma(3));
    let mut d = MotivicExpression::symbol(sym.clone());
    let mut known = Q::zero();
    for ((c, r), f) in x.iter().zip(&refs).zip(&forms) {
        d = d - r.scale(c);
        known += c * f.coeff(&s3);
    }
    let mut found: Vec<(u64, Q)> = Vec::new();
    for p in RECOGNITION_PRIMES {
        if places.contains(p) {
            continue;
        }
        let ctx = PadicContext::new(p, 3, *policy)?;
        let v = ctx.period_map(&d)?;
        let w = policy.report(&ctx.divide_by_zeta(&v, 3)?);
        let (nb, db) = balanced_bounds(p, w.abs_prec(), RECOGNITION_CAP);
        let r = rational_reconstruct(&w, nb, db).ok_or_else(|| {
            PipelineError::Recognition(format!("no small rational for ({d})/zeta(3) at p = {p}"))
        })?;
        found.push((p, r));
    }
    let Some((_, r)) = found.first().cloned() else {
        return Err(PipelineError::Recognition(
            "no recognition prime available".into(),
        ));
    };
    if found.iter().any(|(_, x)| *x != r) {
        let all: Vec<String> = found
            .iter()
            .map(|(p, x)| format!("{} at p = {p}", format_q(x)))
            .collect();
        return Err(PipelineError::Recognition(format!(
            "primes disagree for {sym}: {}",
            all.join(", ")
        )));
    }
    let primes: Vec<String> = found.iter().map(|(p, _)| p.to_string()).collect();
    Ok(PeriodEntry {
        symbol: sym.clone(),
        places: places.clone(),
        primitive: Some(r.clone() + known),
        provenance: format!(
            "p-adic recognition: ({d})/zeta(3) = {} at p = {} (M = {}, g = {})",
            format_q(&r),
            primes.join(", "),
            policy.work_prec,
            policy.guard
        ),
    })
}

fn parse_places(s: &str) -> Option<PlaceSet> {
    let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?;
    let primes: Option<Vec<u64>> = inner.split(',').map(|x| x.trim().parse().ok()).collect();
    PlaceSet::new(primes?).ok()
}

type TableCache = Mutex<BTreeMap<(PlaceSet, u32, u32), PeriodTable>>;

fn table_cache() -> &'static TableCache {
    static C: OnceLock<TableCache> = OnceLock::new();
    C.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The axiom table extended by every weight-3 coefficient that the `f_στ` recipe for `places` needs.
pub fn resolved_table(
    places: &PlaceSet,
    policy: &PadicPolicy,
) -> Result<PeriodTable, PipelineError> {
    let key = (places.clone(), policy.work_prec, policy.guard);
    if let Some(t) = table_cache().lock().expect("table cache").get(&key) {
        return Ok(t.clone());
    }
    let mut table = PeriodTable::with_axioms();
    for _ in 0..8 {
        match f_sigma_tau_expression(places, &table) {
            Ok(_) | Err(GaloisError::NoRecipe(_)) => {
                table_cache()
                    .lock()
                    .expect("table cache")
                    .insert(key, table.clone());
                return Ok(table);
            }
            Err(GaloisError::UnknownPrimitive { symbol, places: at }) => {
                let sym: PolylogSymbol = symbol.parse()?;
                let at = parse_places(&at)
                    .ok_or_else(|| PipelineError::Recognition(format!("place set {at}")))?;
                if sym.weight() != 3 {
                    return Err(PipelineError::Recognition(format!(
                        "no numerical recipe for {sym}"
                    )));
                }
                let entry = recognize_weight3(&table, &sym, &at, policy)?;
                table.insert(entry);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Err(PipelineError::Recognition(format!(
        "table for {places} did not stabilize"
    )))
}

/// Period expressions for the f-words appearing in the coefficients.
pub fn coefficient_assignment(
    elements: &[IdealElement],
    places: &PlaceSet,
    policy: &PadicPolicy,
) -> Result<BTreeMap<Word, MotivicExpression>, PipelineError> {
    let mut out = BTreeMap::new();
    for e in elements {
        for (_, c) in e.poly().terms() {
            for w in c.vars() {
                if out.contains_key(&w) {
                    continue;
                }
                let value = match w.letters() {
                    [g] => {
                        let id = g.id();
                        if let Some(l) = id.strip_prefix("tau_") {
                            Some(MotivicExpression::log(&Q::from_integer(
                                l.parse::<i64>().expect("prime").into(),
                            ))?)
                        } else if let Some(k) = id.strip_prefix("sigma_") {
                            Some(MotivicExpression::zeta(k.parse().expect("weight"))?)
                        } else {
                            None
                        }
                    }
                    [s, t] if s.id() == "sigma_3" && t.id().starts_with("tau_") => {
                        let table = resolved_table(places, policy)?;
                        Some(f_sigma_tau_expression(places, &table)?.expression)
                    }
                    _ => None,
                };
                if let Some(v) = value {
                    out.insert(w, v);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IdealRun {
    pub n: u32,
    pub places: PlaceSet,
    pub strategy: String,
    pub elements: Vec<IdealElement>,
    pub vanishing: Vec<bool>,
    /// Period specializations, when every f-word has an expression.
    pub specialized: Option<Vec<SpecializedElement>>,
}

impl IdealRun {
    pub fn certified(&self) -> bool {
        self.vanishing.iter().all(|v| *v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let elements: Vec<_> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let mut j = e.to_json();
                j["vanishing"] = json!(self.vanishing[i]);
                if let Some(s) = &self.specialized {
                    j["specialized"] = s[i].to_json();
                }
                j
            })
            .collect();
        json!({
            "S": self.places.primes().collect::<Vec<_>>(),
            "n": self.n,
            "strategy": self.strategy,
            "certified": self.certified(),
            "generators": elements,
        })
    }
}

/// Ideal generators with their vanishing certificates and period specializations.
pub fn ideal_run(cfg: &RunConfig) -> Result<IdealRun, PipelineError> {
    let s = strategy(&cfg.strategy)?;
    let elements = EliminationProblem::new(cfg.n, &cfg.places)?.solve(s.as_ref(), cfg.guard)?;
    let vanishing = elements
        .iter()
        .map(|e| verify_vanishing(e, cfg.n, &cfg.places))
        .collect();
    let specialized = match coefficient_assignment(&elements, &cfg.places, &cfg.policy) {
        Ok(a) => elements
            .iter()
            .map(|e| specialize_coefficients(e, &a))
            .collect::<Result<Vec<_>, _>>()
            .ok(),
        Err(_) => None,
    };
    Ok(IdealRun {
        n: cfg.n,
        places: cfg.places.clone(),
        strategy: s.name().to_string(),
        elements,
        vanishing,
        specialized,
    })
}

#[derive(Clone, Debug)]
pub struct LocusRun {
    pub ideal: IdealRun,
    pub functions: Vec<ColemanFunction>,
    pub locus: Locus,
    pub symmetrized: Option<Locus>,
}

impl LocusRun {
    /// Every certificate in the run holds.
    pub fn certified(&self) -> bool {
        self.ideal.certified()
            && self.locus.is_certified()
            && self.symmetrized.as_ref().is_none_or(|l| l.is_certified())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut j = json!({
            "S": self.ideal.places.primes().collect::<Vec<_>>(),
            "n": self.ideal.n,
            "p": self.locus.p,
            "certified": self.certified(),
            "functions": self.functions.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
            "locus": self.locus.to_json(),
        });
        if let Some(s) = &self.symmetrized {
            j["symmetrized"] = s.to_json();
        }
        j
    }
}

/// Function id from its target weight, disambiguated by position.
fn function_id(e: &IdealElement, i: usize, all: &[IdealElement]) -> String {
    let w = e.target_weight().unwrap_or(0);
    if all.iter().filter(|x| x.target_weight() == Some(w)).count() > 1 {
        format!("F{w}.{i}")
    } else {
        format!("F{w}")
    }
}

/// Zeros of the lowest-weight function, cut down by the remaining ones.
pub fn locus_run(cfg: &RunConfig, symmetrize: bool) -> Result<LocusRun, PipelineError> {
    cfg.check_numeric()?;
    let ideal = ideal_run(cfg)?;
    if ideal.elements.is_empty() {
        return Err(PipelineError::Config(format!(
            "no ideal elements in weight ≤ {}: the locus is not finite",
            cfg.n
        )));
    }
    let specialized = match &ideal.specialized {
        Some(s) => s.clone(),
        None => {
            let a = coefficient_assignment(&ideal.elements, &cfg.places, &cfg.policy)?;
            ideal
                .elements
                .iter()
                .map(|e| specialize_coefficients(e, &a))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let ctx = PadicContext::new(cfg.p, cfg.n, cfg.policy)?;
    let functions: Vec<ColemanFunction> = specialized
        .iter()
        .enumerate()
        .map(|(i, s)| {
            assemble_coleman(
                s,
                &ctx,
                &function_id(&ideal.elements[i], i, &ideal.elements),
            )
        })
        .collect::<Result<_, _>>()?;
    let mut locus = find_zeros(&functions[0], &cfg.policy)?;
    for f in &functions[1..] {
        locus = restrict_locus(&locus, f)?;
    }
    let symmetrized = symmetrize.then(|| s3_symmetrize(&locus));
    Ok(LocusRun {
        ideal,
        functions,
        locus,
        symmetrized,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn recognized_coefficients() {
        let policy = PadicPolicy::default();
        let t3 = resolved_table(&PlaceSet::new([3]).unwrap(), &policy).unwrap();
        let s23 = PlaceSet::new([2, 3]).unwrap();
        assert_eq!(
            t3.primitive(&s23, &PolylogSymbol::Li(3, qi(9))),
            Some(q(-26, 3))
        );
        let s2 = PlaceSet::new([2]).unwrap();
        let t2 = resolved_table(&s2, &policy).unwrap();
        let e = t2.get(&s2, &PolylogSymbol::Li(3, q(1, 2))).unwrap();
        assert_eq!(e.primitive, Some(q(7, 8)));
        assert!(e.provenance.contains("p = 5, 7"), "{}", e.provenance);
    }

    #[test]
    fn loci_over_three() {
        let policy = PadicPolicy::default();
        let s3 = PlaceSet::new([3]).unwrap();
        for p in [5u64, 7] {
            let r = locus_run(&RunConfig::new(s3.clone(), p, 4, policy), true).unwrap();
            assert!(r.certified(), "{}", r.to_json());
            assert_eq!(r.locus.rationals(), Some(vec![qi(-1)]));
            assert!(r.symmetrized.unwrap().is_empty());
        }
        let r = locus_run(&RunConfig::new(s3.clone(), 7, 2, policy), false).unwrap();
        assert_eq!(r.locus.rationals(), Some(vec![qi(-1), q(1, 2), qi(2)]));
        assert!(locus_run(&RunConfig::new(s3.clone(), 3, 2, policy), false).is_err());
        assert!(locus_run(&RunConfig::new(s3, 5, 1, policy), false).is_err());
    }
}
