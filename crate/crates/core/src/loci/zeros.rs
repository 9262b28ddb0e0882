//! Disk-by-disk root isolation: Newton polygons, Newton iteration and Hensel certificates.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use super::coleman::ColemanFunction;
use super::LociError;
use crate::algebra::rational::binomial;
use crate::algebra::{format_q, Q};
use crate::padic::{eval_series, rational_reconstruct, Padic, PadicPolicy};

/// Height bounds used when naming roots as rationals.
pub const GUESS_BOUND: u64 = 1000;
/// Subdivision depth after which a cluster of roots is reported uncertified.
pub const MAX_DEPTH: u32 = 6;

#[derive(Clone, Debug)]
pub struct LocusZero {
    pub disk: u64,
    pub root: Padic,
    /// Number of roots (with multiplicity) the certificate accounts for.
    pub multiplicity: u32,
    pub certified: bool,
    pub rational_guess: Option<Q>,
    /// Valuations of each function of the locus at the root.
    pub residuals: Vec<(String, i64)>,
}

#[derive(Clone, Debug)]
pub struct Locus {
    pub p: u64,
    pub policy: PadicPolicy,
    pub functions: Vec<String>,
    pub zeros: Vec<LocusZero>,
}

impl Locus {
    pub fn empty(p: u64, policy: PadicPolicy) -> Self {
        Locus {
            p,
            policy,
            functions: Vec::new(),
            zeros: Vec::new(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.zeros.iter().all(|z| z.certified)
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// Recognized rationals of the roots, or `None` if some root is unnamed.
    pub fn rationals(&self) -> Option<Vec<Q>> {
        let mut v: Vec<Q> = self
            .zeros
            .iter()
            .map(|z| z.rational_guess.clone())
            .collect::<Option<_>>()?;
        v.sort();
        Some(v)
    }

    pub fn contains(&self, z: &Padic) -> bool {
        self.zeros.iter().any(|x| self.policy.equal(&x.root, z))
    }

    fn sort(&mut self) {
        self.zeros.sort_by_key(|a| (a.disk, a.root.digits()));
    }

    pub fn to_json(&self) -> serde_json::Value {
        let zeros: Vec<_> = self
            .zeros
            .iter()
            .map(|z| {
                let r = self.policy.report(&z.root);
                let mut o = json!({
                    "disk": z.disk,
                    "digits": r.digits(),
                    "prec": r.abs_prec(),
                    "certified": z.certified,
                    "multiplicity": z.multiplicity,
                    "residuals": z.residuals.iter().map(|(f, v)| json!({"function": f, "valuation": v})).collect::<Vec<_>>(),
                });
                if let Some(g) = &z.rational_guess {
                    o["rationalGuess"] = json!(format_q(g));
                }
                o
            })
            .collect();
        json!({"p": self.p, "functions": self.functions, "zeros": zeros, "policy": self.policy.to_json()})
    }
}

fn guess(policy: &PadicPolicy, root: &Padic) -> Option<Q> {
    let r = policy.report(root);
    let m = BigInt::from(r.prime()).pow(r.abs_prec().max(0) as u32);
    if BigInt::from(2 * GUESS_BOUND * GUESS_BOUND) >= m {
        return None;
    }
    rational_reconstruct(&r, GUESS_BOUND, GUESS_BOUND)
}

/// `g(s) = f(b + p s)` as a truncated series.
fn shift(c: &[Padic], b: u64) -> Vec<Padic> {
    let p = c[0].prime();
    let n = c.len();
    (0..n)
        .map(|i| {
            let mut acc: Option<Padic> = None;
            for (j, cj) in c.iter().enumerate().skip(i) {
                let k = Q::from_integer(
                    binomial(j as u64, i as u64) * BigInt::from(b).pow((j - i) as u32),
                );
                let t = cj.mul_q(&k);
                acc = Some(match acc {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
            acc.expect("nonempty")
                .mul_q(&Q::from_integer(BigInt::from(p).pow(i as u32)))
        })
        .collect()
}

fn derivative(c: &[Padic]) -> Vec<Padic> {
    let p = c[0].prime();
    let mut d: Vec<Padic> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, x)| x.mul_q(&Q::from_integer(j.into())))
        .collect();
    if d.is_empty() {
        d.push(Padic::zero(p, c[0].abs_prec()));
    }
    d
}

/// Minimal valuation and the last index attaining it, if every coefficient is resolved above it.
fn newton_data(c: &[Padic], noise: i64) -> Option<(i64, usize)> {
    let m = c
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.valuation())
        .min()?;
    let floor = c.iter().map(|x| x.abs_prec()).min()?;
    if m >= noise || m >= floor {
        return None;
    }
    let w = c.iter().rposition(|x| !x.is_zero() && x.valuation() == m)?;
    Some((m, w))
}

struct Found {
    root: Padic,
    multiplicity: u32,
    certified: bool,
}

/// Roots of `g(s) = f(base + p^d s)` for `s ∈ Z_p`.
fn isolate(c: &[Padic], base: &Padic, d: u32, depth: u32, noise: i64, out: &mut Vec<Found>) {
    let p = base.prime();
    let Some((m, w)) = newton_data(c, noise) else {
        out.push(Found {
            root: base.clone(),
            multiplicity: c.len() as u32,
            certified: false,
        });
        return;
    };
    if w == 0 {
        return;
    }
    let scale = Q::from_integer(BigInt::from(p).pow(d));
    if w == 1 {
        let dc = derivative(c);
        let mut s = Padic::zero(p, noise);
        for _ in 0..200 {
            let g = eval_series(c, &s);
            if g.is_zero() {
                break;
            }
            let dg = eval_series(&dc, &s);
            if dg.is_zero() || dg.valuation() != m {
                out.push(Found {
                    root: base.add(&s.mul_q(&scale)),
                    multiplicity: 1,
                    certified: false,
                });
                return;
            }
            let next = s.sub(&g.div(&dg));
            if next.sub(&s).is_zero() {
                s = next;
                break;
            }
            s = next;
        }
        // One root: the derivative has the minimal valuation on the whole disk.
        out.push(Found {
            root: base.add(&s.mul_q(&scale)),
            multiplicity: 1,
            certified: true,
        });
        return;
    }
    if depth >= MAX_DEPTH {
        out.push(Found {
            root: base.clone(),
            multiplicity: w as u32,
            certified: false,
        });
        return;
    }
    for b in 0..p {
        let nb = base.add(&Padic::from_int(p, b as i64, noise).mul_q(&scale));
        isolate(&shift(c, b), &nb, d + 1, depth + 1, noise, out);
    }
}

/// All zeros of `F` on the good residue disks, certified where the Newton polygon isolates them.
pub fn find_zeros(f: &ColemanFunction, policy: &PadicPolicy) -> Result<Locus, LociError> {
    let p = f.prime();
    let noise = f.context().digits() - policy.guard as i64;
    let per_disk: Vec<Result<Vec<LocusZero>, LociError>> = (2..p)
        .into_par_iter()
        .map(|a| {
            let c = f.local_series(a)?;
            let center = f
                .context()
                .table()
                .disk(a)
                .expect("good disk")
                .center
                .clone();
            let mut found = Vec::new();
            isolate(&c, &center, 1, 0, noise, &mut found);
            found
                .into_iter()
                .map(|r| {
                    let v = f.evaluate(&r.root)?;
                    Ok(LocusZero {
                        disk: a,
                        rational_guess: guess(policy, &r.root),
                        root: r.root,
                        multiplicity: r.multiplicity,
                        certified: r.certified && policy.is_zero(&v),
                        residuals: vec![(f.id().to_string(), policy.reported_valuation(&v))],
                    })
                })
                .collect()
        })
        .collect();
    let mut zeros = Vec::new();
    for r in per_disk {
        zeros.extend(r?);
    }
    let mut l = Locus {
        p,
        policy: *policy,
        functions: vec![f.id().to_string()],
        zeros,
    };
    l.sort();
    Ok(l)
}

/// Points of `L1` matched by a point of `L2` under the equality rule.
pub fn intersect_loci(l1: &Locus, l2: &Locus, policy: &PadicPolicy) -> Result<Locus, LociError> {
    if l1.p != l2.p {
        return Err(LociError::PrimeMismatch(l1.p, l2.p));
    }
    let mut functions = l1.functions.clone();
    for f in &l2.functions {
        if !functions.contains(f) {
            functions.push(f.clone());
        }
    }
    let mut zeros = Vec::new();
    for z in &l1.zeros {
        if let Some(o) = l2
            .zeros
            .iter()
            .find(|o| o.disk == z.disk && policy.equal(&o.root, &z.root))
        {
            let mut merged = z.clone();
            merged.certified = z.certified && o.certified;
            merged.multiplicity = z.multiplicity.min(o.multiplicity);
            for r in &o.residuals {
                if !merged.residuals.iter().any(|x| x.0 == r.0) {
                    merged.residuals.push(r.clone());
                }
            }
            zeros.push(merged);
        }
    }
    let mut l = Locus {
        p: l1.p,
        policy: *policy,
        functions,
        zeros,
    };
    l.sort();
    Ok(l)
}

/// Keeps the zeros of `L` at which `F` also vanishes.
pub fn restrict_locus(l: &Locus, f: &ColemanFunction) -> Result<Locus, LociError> {
    if l.p != f.prime() {
        return Err(LociError::PrimeMismatch(l.p, f.prime()));
    }
    let mut out = l.clone();
    out.functions.push(f.id().to_string());
    out.zeros.clear();
    for z in &l.zeros {
        let v = f.evaluate(&z.root)?;
        if l.policy.is_zero(&v) {
            let mut z = z.clone();
            z.residuals
                .push((f.id().to_string(), l.policy.reported_valuation(&v)));
            out.zeros.push(z);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi, Poly};
    use crate::galois::SymbolPoly;
    use crate::geometric::{SpecializedElement, Target};
    use crate::loci::assemble_coleman;
    use crate::padic::{teichmuller, LocalPolylogTable, PadicContext};

    fn ctx(p: u64, n: u32) -> PadicContext {
        let policy = PadicPolicy::default();
        PadicContext::from_table(
            LocalPolylogTable::build(p, n, policy.internal_digits()).unwrap(),
            policy,
        )
    }

    fn element(p: Poly<Target, SymbolPoly>) -> SpecializedElement {
        SpecializedElement { poly: p }
    }

    #[test]
    fn weight_two_zero_set() {
        let t = |x: Target| Poly::<Target, SymbolPoly>::var(x);
        let half = Poly::<Target, SymbolPoly>::constant(SymbolPoly::constant(q(1, 2)));
        let e = element(t(Target::Li(2)) - half * t(Target::Log) * t(Target::Li(1)));
        for p in [5u64, 7] {
            let c = ctx(p, 2);
            let f = assemble_coleman(&e, &c, "F2").unwrap();
            let l = find_zeros(&f, c.policy()).unwrap();
            assert!(l.is_certified(), "{}", l.to_json());
            assert_eq!(
                l.rationals(),
                Some(vec![qi(-1), q(1, 2), qi(2)]),
                "{}",
                l.to_json()
            );
        }
    }

    #[test]
    fn li1_zeros_are_one_minus_roots_of_unity() {
        let e = element(Poly::var(Target::Li(1)));
        let p = 5;
        let c = ctx(p, 1);
        let f = assemble_coleman(&e, &c, "Li1").unwrap();
        let l = find_zeros(&f, c.policy()).unwrap();
        assert!(l.is_certified());
        // Brute-force oracle: 1 − ω for every root of unity ω ≠ 1.
        let oracle: Vec<Padic> = (2..p)
            .map(|a| Padic::one(p, 20).sub(&teichmuller(p, a, 20)))
            .collect();
        assert_eq!(l.len(), oracle.len());
        for o in &oracle {
            assert!(l.contains(o), "{o}");
        }
    }

    #[test]
    fn scan_finds_small_values_only_near_roots() {
        let t = |x: Target| Poly::<Target, SymbolPoly>::var(x);
        let half = Poly::<Target, SymbolPoly>::constant(SymbolPoly::constant(q(1, 2)));
        let e = element(t(Target::Li(2)) - half * t(Target::Log) * t(Target::Li(1)));
        let p = 5;
        let c = ctx(p, 2);
        let f = assemble_coleman(&e, &c, "F2").unwrap();
        let l = find_zeros(&f, c.policy()).unwrap();
        // Net of spacing p^-3: every residue class mod p^3 outside the bad disks.
        for n in 0..p.pow(3) {
            if n % p < 2 {
                continue;
            }
            let z = Padic::from_int(p, n as i64, 22);
            let v = f.evaluate(&z).unwrap();
            if v.valuation() >= 3 {
                let near = l.zeros.iter().any(|r| r.root.sub(&z).valuation() >= 1);
                assert!(near, "small value at {n} away from the locus");
            }
        }
    }

    #[test]
    fn intersection_and_restriction() {
        let policy = PadicPolicy::default();
        let mk = |vals: &[Q], certified: bool| Locus {
            p: 5,
            policy,
            functions: vec!["A".into()],
            zeros: vals
                .iter()
                .map(|v| {
                    let root = Padic::from_rational(5, v, 22);
                    LocusZero {
                        disk: root.residue().unwrap(),
                        root,
                        multiplicity: 1,
                        certified,
                        rational_guess: Some(v.clone()),
                        residuals: vec![],
                    }
                })
                .collect(),
        };
        let a = mk(&[qi(2), q(1, 2), qi(-1)], true);
        let junk = Q::new(BigInt::from(123_456_789), BigInt::from(1));
        let b = mk(&[qi(-1), junk], true);
        let i = intersect_loci(&a, &b, &policy).unwrap();
        assert_eq!(i.rationals(), Some(vec![qi(-1)]));
        assert_eq!(
            intersect_loci(&a, &a, &policy).unwrap().rationals(),
            a.rationals()
        );
        let mut other = a.clone();
        other.p = 7;
        assert!(intersect_loci(&a, &other, &policy).is_err());
    }
}
