//! Named verification suites, selected by name through a registry.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::algebra::{q, qi, Q};
use crate::cocycle::{cocycle_apply, extract_coordinates, CocycleCoordinates, PhiVar};
use crate::galois::coproduct::reduced_coproduct as symbolic_coproduct;
use crate::galois::{
    basis_certificate_deg3, motivic_generators, BasisExpander, PeriodTable, PlaceSet,
    PolylogSymbol, SymbolPoly,
};
use crate::geometric::reference::{weight_four, weight_two};
use crate::geometric::{strategies, verify_vanishing, EliminationProblem, Guard};
use crate::loci::counterexample_cocycle;
use crate::padic::{
    balanced_bounds, complex_p3, kummer_spence_check, padic_l3_check, rational_reconstruct, Padic,
    PadicContext, PadicPolicy, ZETA3,
};
use crate::pipeline::PipelineError;
use crate::shuffle::{
    coassociativity_defect, cobar_defect, tensor, tensor_mul, GeneratorSet, ShuffleElement,
    TensorElement, Word,
};

const SEED: u64 = 0x5eed_c0c1;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub places: PlaceSet,
    pub primes: Vec<u64>,
    pub n: u32,
    pub policy: PadicPolicy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            places: PlaceSet::new([3]).expect("prime"),
            primes: vec![5, 7],
            n: 4,
            policy: PadicPolicy::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Value) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({"check": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        })
    }
}

pub trait VerifySuite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError>;
}

pub fn suites() -> Vec<Box<dyn VerifySuite>> {
    vec![
        Box::new(HopfSuite),
        Box::new(CertificateSuite),
        Box::new(IdentitiesSuite),
        Box::new(AppendixSuite),
        Box::new(CounterexampleSuite),
    ]
}

pub fn suite(name: &str) -> Result<Box<dyn VerifySuite>, PipelineError> {
    suites()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| PipelineError::UnknownSuite(name.to_string()))
}

/// Residual valuation against the equality rule.
fn residual(policy: &PadicPolicy, name: impl Into<String>, x: &Padic) -> Check {
    let r = policy.report(x);
    Check::new(
        name,
        policy.is_zero(x),
        json!({"value": r.to_json(), "valuation": r.valuation(), "threshold": policy.threshold(), "policy": policy.to_json()}),
    )
}

fn contexts(cfg: &SuiteConfig, weight: u32) -> Result<Vec<PadicContext>, PipelineError> {
    cfg.primes
        .iter()
        .map(|p| Ok(PadicContext::new(*p, weight, cfg.policy)?))
        .collect()
}

pub struct HopfSuite;

fn random_element(rng: &mut StdRng, words: &[Word]) -> ShuffleElement<Q> {
    let mut x = ShuffleElement::zero();
    for _ in 0..3 {
        let w = words[rng.gen_range(0..words.len())].clone();
        x.add_term(w, qi(rng.gen_range(-5..=5)));
    }
    x
}

impl VerifySuite for HopfSuite {
    fn name(&self) -> &'static str {
        "hopf"
    }

    fn description(&self) -> &'static str {
        "shuffle Hopf algebra laws, coproduct coassociativity on symbols, cocycle coordinate round trips"
    }

    fn run(&self, _cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError> {
        let max = 8;
        let s23 = PlaceSet::new([2, 3])?;
        let gens = motivic_generators(&s23, 7);
        let by_weight: Vec<Vec<Word>> = (0..=max).map(|n| gens.words_of_weight(n)).collect();
        let mut checks = Vec::new();
        let all: Vec<&Word> = by_weight.iter().skip(1).flatten().collect();
        let coassoc = all
            .iter()
            .all(|w| coassociativity_defect(&ShuffleElement::<Q>::word((*w).clone())).is_zero());
        checks.push(Check::new(
            "coassociativity",
            coassoc,
            json!({"words": all.len(), "maxWeight": max}),
        ));
        let cobar = all.iter().all(|w| {
            cobar_defect(&ShuffleElement::<Q>::word((*w).clone()).reduced_coproduct()).is_zero()
        });
        checks.push(Check::new(
            "reduced coproduct is a cobar cocycle",
            cobar,
            json!({"words": all.len()}),
        ));
        let dims =
            (0..=max).all(|n| gens.graded_dimension(n) == by_weight[n as usize].len() as u64);
        checks.push(Check::new(
            "graded dimensions",
            dims,
            json!({"dims": by_weight.iter().map(|v| v.len()).collect::<Vec<_>>()}),
        ));
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut ok = true;
        let trials = 200;
        for _ in 0..trials {
            let i = rng.gen_range(1..max);
            let j = rng.gen_range(1..=max - i);
            let a = random_element(&mut rng, &by_weight[i as usize]);
            let b = random_element(&mut rng, &by_weight[j as usize]);
            ok &= a.shuffle(&b).deconcat() == tensor_mul(&a.deconcat(), &b.deconcat());
        }
        checks.push(Check::new(
            "bialgebra compatibility",
            ok,
            json!({"pairs": trials}),
        ));
        checks.push(goncharov_check()?);
        checks.push(round_trip_check(&mut rng)?);
        Ok(SuiteReport {
            suite: self.name().into(),
            checks,
        })
    }
}

fn goncharov_check() -> Result<Check, PipelineError> {
    let table = PeriodTable::with_axioms();
    let s = PlaceSet::new([2, 3])?;
    let ex = BasisExpander::new(&s, 4, &table);
    let symbols = [
        PolylogSymbol::Li(2, qi(-2)),
        PolylogSymbol::Li(2, qi(3)),
        PolylogSymbol::Li(2, qi(9)),
        PolylogSymbol::Li(2, qi(-3)),
        PolylogSymbol::Li(3, qi(-2)),
        PolylogSymbol::Li(3, qi(3)),
        PolylogSymbol::Li(3, qi(9)),
        PolylogSymbol::Li(3, qi(-3)),
        PolylogSymbol::Li(3, q(1, 2)),
        PolylogSymbol::Li(4, qi(3)),
        PolylogSymbol::Li(4, qi(-2)),
    ];
    let mut failures = Vec::new();
    for sym in &symbols {
        let p = SymbolPoly::var(sym.clone());
        let t = ex.reduced_coproduct(&p)?;
        let mut via: TensorElement<Q> = TensorElement::zero();
        for ((a, b), c) in symbolic_coproduct(&p)?.terms() {
            let l = ex.basis_form(&SymbolPoly::term(a.clone(), qi(1)))?;
            let r = ex.basis_form(&SymbolPoly::term(b.clone(), qi(1)))?;
            via = via + tensor(&l, &r).scale(c);
        }
        if !cobar_defect(&t).is_zero() || via != t {
            failures.push(sym.to_string());
        }
    }
    Ok(Check::new(
        "symbol coproduct coassociativity",
        failures.is_empty(),
        json!({"symbols": symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>(), "failures": failures}),
    ))
}

fn round_trip_check(rng: &mut StdRng) -> Result<Check, PipelineError> {
    let mut ok = true;
    let mut count = 0;
    for places in [PlaceSet::new([2])?, PlaceSet::new([2, 3])?] {
        let n = 5;
        let gens: GeneratorSet = motivic_generators(&places, n);
        for _ in 0..10 {
            let mut c = CocycleCoordinates::new(&gens);
            for v in PhiVar::all(&gens, n) {
                c.insert(v, q(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            }
            let images = cocycle_apply(&c, n)?;
            let back = extract_coordinates(&images, &gens);
            ok &= back.iter().collect::<Vec<_>>() == c.iter().collect::<Vec<_>>();
            count += 1;
        }
    }
    Ok(Check::new(
        "cocycle coordinate round trip",
        ok,
        json!({"samples": count}),
    ))
}

pub struct CertificateSuite;

impl VerifySuite for CertificateSuite {
    fn name(&self) -> &'static str {
        "certificate"
    }

    fn description(&self) -> &'static str {
        "degree-three basis determinant and the weight-four ideal generators over one place"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError> {
        let mut checks = Vec::new();
        let c = basis_certificate_deg3(&PeriodTable::with_axioms())?;
        checks.push(Check::new(
            "determinant",
            c.determinant == qi(9),
            json!({"determinant": crate::algebra::format_q(&c.determinant)}),
        ));
        let places: Vec<u64> = match cfg.places.single() {
            Some(l) if l == 2 || l == 3 => vec![l],
            _ => vec![2, 3],
        };
        for l in places {
            let s = PlaceSet::new([l])?;
            for strat in strategies() {
                let got =
                    EliminationProblem::new(4, &s)?.solve(strat.as_ref(), Guard::default())?;
                let expected = vec![weight_two(), weight_four(l)];
                let vanish = got.iter().all(|e| verify_vanishing(e, 4, &s));
                checks.push(Check::new(
                    format!("generators over {{{l}}} ({})", strat.name()),
                    got == expected && vanish,
                    json!({"generators": got.iter().map(|e| e.to_string()).collect::<Vec<_>>(), "vanishing": vanish}),
                ));
            }
        }
        Ok(SuiteReport {
            suite: self.name().into(),
            checks,
        })
    }
}

pub struct IdentitiesSuite;

/// Random integer in a good residue class with `z`, `−z` and `z²` all good.
fn random_unit(rng: &mut StdRng, p: u64, digits: u32) -> Q {
    let m = BigInt::from(p).pow(digits);
    loop {
        let x: u64 = rng.gen();
        let z = BigInt::from(x) % &m;
        let r = (&z % BigInt::from(p))
            .to_string()
            .parse::<u64>()
            .expect("residue");
        if r >= 2 && r + 1 < p {
            return Q::from_integer(z);
        }
    }
}

impl VerifySuite for IdentitiesSuite {
    fn name(&self) -> &'static str {
        "identities"
    }

    fn description(&self) -> &'static str {
        "p-adic period identities, zeta values, distribution relation and precision soundness"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError> {
        let policy = cfg.policy;
        let mut checks = Vec::new();
        let mut recognized = Vec::new();
        let mut rng = StdRng::seed_from_u64(SEED);
        for ctx in contexts(cfg, 4)? {
            let p = ctx.prime();
            let l2 = ctx.log_q(&qi(2))?;
            let r = ctx
                .polylog_q(3, &q(1, 2))?
                .sub(&l2.pow(3).div_q(&qi(6)))
                .sub(&ctx.zeta(3)?.mul_q(&q(7, 8)));
            checks.push(residual(
                &policy,
                format!("p={p}: Li3(1/2) - log(2)^3/6 - 7/8 zeta(3)"),
                &r,
            ));
            let d = ctx
                .polylog_q(3, &qi(9))?
                .sub(&ctx.polylog_q(3, &qi(3))?.mul_q(&qi(12)));
            let w = policy.report(&ctx.divide_by_zeta(&d, 3)?);
            let (nb, db) = balanced_bounds(p, w.abs_prec(), 1000);
            let got = rational_reconstruct(&w, nb, db);
            checks.push(Check::new(
                format!("p={p}: (Li3(9) - 12 Li3(3))/zeta(3)"),
                got == Some(q(-26, 3)) && w.abs_prec() >= policy.threshold(),
                json!({"value": w.to_json(), "rational": got.as_ref().map(crate::algebra::format_q), "loss": policy.work_prec as i64 - w.abs_prec()}),
            ));
            recognized.push(got);
            for k in [2, 4] {
                checks.push(residual(
                    &policy,
                    format!("p={p}: Li{k}(-1)"),
                    &ctx.polylog_q(k, &qi(-1))?,
                ));
            }
            let z3 = ctx.zeta(3)?;
            let rel = z3.sub(&ctx.polylog_q(3, &qi(-1))?.mul_q(&q(-4, 3)));
            checks.push(Check::new(
                format!("p={p}: zeta values"),
                ctx.zeta(2)?.is_zero()
                    && ctx.zeta(4)?.is_zero()
                    && !policy.is_zero(&z3)
                    && policy.is_zero(&rel),
                json!({"zeta3": policy.report(&z3).to_json(), "valuation": z3.valuation()}),
            ));
            let digits = ctx.digits() as u32;
            let mut worst = i64::MAX;
            let mut ok = true;
            for k in 1..=4u32 {
                for _ in 0..50 {
                    let z = random_unit(&mut rng, p, digits);
                    let lhs = ctx
                        .polylog_q(k, &(&z * &z))?
                        .mul_q(&Q::new(1.into(), BigInt::from(2).pow(k - 1)))
                        .sub(&ctx.polylog_q(k, &z)?)
                        .sub(&ctx.polylog_q(k, &-z.clone())?);
                    worst = worst.min(policy.reported_valuation(&lhs));
                    ok &= policy.is_zero(&lhs);
                }
            }
            checks.push(Check::new(
                format!("p={p}: distribution relation (50 points, k <= 4)"),
                ok,
                json!({"worstValuation": worst, "threshold": policy.threshold()}),
            ));
            checks.push(precision_soundness(&ctx, &mut rng)?);
        }
        if recognized.len() > 1 {
            let same = recognized.windows(2).all(|w| w[0] == w[1]);
            checks.push(Check::new(
                "cross-prime recognition agrees",
                same,
                json!({}),
            ));
        }
        Ok(SuiteReport {
            suite: self.name().into(),
            checks,
        })
    }
}

/// Values at `M` agree with values at `M + 5` to every digit they claim.
fn precision_soundness(ctx: &PadicContext, rng: &mut StdRng) -> Result<Check, PipelineError> {
    let policy = *ctx.policy();
    let high_policy = PadicPolicy::new(policy.work_prec + 5, policy.guard)?;
    let high = PadicContext::new(ctx.prime(), ctx.table().max_weight, high_policy)?;
    let p = ctx.prime();
    let mut samples: Vec<(String, Padic, Padic)> = Vec::new();
    let mut pair = |name: String,
                    f: &dyn Fn(&PadicContext) -> Result<Padic, PipelineError>|
     -> Result<(), PipelineError> {
        samples.push((name, f(ctx)?, f(&high)?));
        Ok(())
    };
    pair("log(2)".into(), &|c| Ok(c.log_q(&qi(2))?))?;
    pair("zeta(3)".into(), &|c| Ok(c.zeta(3)?))?;
    pair("w2(9)".into(), &|c| {
        let d = c
            .polylog_q(3, &qi(9))?
            .sub(&c.polylog_q(3, &qi(3))?.mul_q(&qi(12)));
        Ok(c.divide_by_zeta(&d, 3)?)
    })?;
    for k in 1..=ctx.table().max_weight {
        for _ in 0..3 {
            let z = random_unit(rng, p, 8);
            let name = format!("Li{k}({})", crate::algebra::format_q(&z));
            pair(name, &|c| Ok(c.polylog_q(k, &z)?))?;
        }
    }
    let mut bad = Vec::new();
    for (name, lo, hi) in &samples {
        let claimed = lo.sub(hi).is_zero();
        let reported = policy.report(lo).sub(&policy.report(hi)).is_zero();
        if !(claimed && reported) {
            bad.push(name.clone());
        }
    }
    Ok(Check::new(
        format!("p={p}: precision soundness (M vs M+5)"),
        bad.is_empty(),
        json!({"samples": samples.len(), "failures": bad}),
    ))
}

pub struct AppendixSuite;

impl VerifySuite for AppendixSuite {
    fn name(&self) -> &'static str {
        "appendix"
    }

    fn description(&self) -> &'static str {
        "weight-three identities at 3 and -3, p-adically and for the single-valued complex trilogarithm"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError> {
        let mut checks = Vec::new();
        for ctx in contexts(cfg, 3)? {
            let c = padic_l3_check(&ctx)?;
            for (name, r) in c.residuals() {
                checks.push(residual(&cfg.policy, format!("p={}: {name}", c.p), r));
            }
        }
        let p3 = |x: f64| complex_p3(Complex64::new(x, 0.0));
        let a = (p3(-1.0 / 3.0) - 2.0 * p3(1.0 / 3.0) + 13.0 / 6.0 * ZETA3).abs();
        let b = (p3(-1.0) + 0.75 * ZETA3).abs();
        let k = kummer_spence_check();
        checks.push(Check::new(
            "P3(-1/3) - 2 P3(1/3) + 13/6 zeta(3)",
            a < 1e-10,
            json!({"residual": a, "tolerance": 1e-10}),
        ));
        checks.push(Check::new(
            "P3(-1) + 3/4 zeta(3)",
            b < 1e-10,
            json!({"residual": b, "tolerance": 1e-10}),
        ));
        checks.push(Check::new(
            "nine-term relation at (-1, 1/3)",
            k < 1e-10,
            json!({"residual": k, "tolerance": 1e-10}),
        ));
        Ok(SuiteReport {
            suite: self.name().into(),
            checks,
        })
    }
}

pub struct CounterexampleSuite;

impl VerifySuite for CounterexampleSuite {
    fn name(&self) -> &'static str {
        "counterexample"
    }

    fn description(&self) -> &'static str {
        "the cocycle with w0 = 0 evaluating to the period point of -1"
    }

    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport, PipelineError> {
        let l = cfg.places.single().ok_or_else(|| {
            PipelineError::Config(format!(
                "counterexample needs one place, got {}",
                cfg.places
            ))
        })?;
        let mut checks = Vec::new();
        for ctx in contexts(cfg, cfg.n)? {
            let r = counterexample_cocycle(l, cfg.n, ctx.prime(), &ctx)?;
            checks.push(Check::new(
                format!("l={l}, n={}, p={}", cfg.n, ctx.prime()),
                r.passed(),
                r.to_json(),
            ));
        }
        Ok(SuiteReport {
            suite: self.name().into(),
            checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, cfg: &SuiteConfig) -> SuiteReport {
        let r = suite(name).unwrap().run(cfg).unwrap();
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!("{}: {}", c.name, c.detail);
        }
        r
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = suites().iter().map(|s| s.name()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), suites().len());
        assert!(matches!(suite("nope"), Err(PipelineError::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes() {
        let cfg = SuiteConfig::default();
        for s in suites() {
            assert!(run(s.name(), &cfg).passed(), "{}", s.name());
        }
    }
}
