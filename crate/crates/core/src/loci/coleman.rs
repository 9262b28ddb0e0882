//! Coleman functions: polynomials in `log, Li_1, ..., Li_n` with p-adic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::LociError;
use crate::algebra::{Monomial, Q};
use crate::geometric::{target_order, SpecializedElement, Target};
use crate::padic::{eval_series, Padic, PadicContext, PadicError};

#[derive(Clone, Debug)]
pub struct ColemanFunction {
    id: String,
    ctx: PadicContext,
    weight: u32,
    /// Terms in decreasing target order; the first coefficient is one when nonzero.
    terms: Vec<(Monomial<Target>, Padic)>,
}

/// Evaluates the coefficients through the period map and divides by the leading one.
pub fn assemble_coleman(
    e: &SpecializedElement,
    ctx: &PadicContext,
    id: &str,
) -> Result<ColemanFunction, LociError> {
    let mut terms = Vec::new();
    for (m, c) in e.poly.terms() {
        terms.push((m.clone(), ctx.period_poly(c)?));
    }
    terms.sort_by(|a, b| target_order(&b.0, &a.0));
    let weight = terms
        .iter()
        .map(|(m, _)| m.weighted_degree(|t| t.weight()))
        .max()
        .unwrap_or(0);
    if let Some((m, lead)) = terms.first() {
        if ctx.policy().is_zero(lead) {
            return Err(LociError::Degenerate(format!(
                "{id}: leading coefficient of {} vanishes at p = {}",
                render(m),
                ctx.prime()
            )));
        }
        let lead = lead.clone();
        for (_, c) in terms.iter_mut() {
            *c = c.try_div(&lead)?;
        }
    }
    Ok(ColemanFunction {
        id: id.to_string(),
        ctx: ctx.clone(),
        weight,
        terms,
    })
}

fn render(m: &Monomial<Target>) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    for (t, e) in m.pairs().iter().rev() {
        parts.push(if *e == 1 {
            t.to_string()
        } else {
            format!("{t}^{e}")
        });
    }
    parts.join("*")
}

/// Truncated product of two power series.
fn series_mul(a: &[Padic], b: &[Padic], len: usize) -> Vec<Padic> {
    let mut out: Vec<Option<Padic>> = vec![None; len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            let t = x.mul(y);
            out[i + j] = Some(match out[i + j].take() {
                Some(s) => s.add(&t),
                None => t,
            });
        }
    }
    out.into_iter().map(|c| c.expect("filled")).collect()
}

impl ColemanFunction {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn prime(&self) -> u64 {
        self.ctx.prime()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial<Target>, Padic)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_disk(&self, z: &Padic) -> Result<(), LociError> {
        match z.residue() {
            Some(r) if z.valuation() == 0 && r != 1 && !z.is_zero() => Ok(()),
            r => Err(PadicError::BadDisk {
                p: self.prime(),
                residue: r.map_or("non-integral".into(), |r| r.to_string()),
            }
            .into()),
        }
    }

    fn combine(&self, values: &BTreeMap<Target, Padic>) -> Padic {
        let mut total = Padic::zero(self.prime(), self.ctx.digits());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                t = t.mul(&values[v].pow(*e));
            }
            total = total.add(&t);
        }
        total
    }

    fn targets(&self) -> Vec<Target> {
        let mut v: Vec<Target> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.vars().cloned().collect::<Vec<_>>())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Value at a point of a good residue disk.
    pub fn evaluate(&self, z: &Padic) -> Result<Padic, LociError> {
        self.check_disk(z)?;
        let mut values = BTreeMap::new();
        for t in self.targets() {
            let v = match t {
                Target::Log => self.ctx.log(z)?,
                Target::Li(k) => self.ctx.polylog(k, z)?,
            };
            values.insert(t, v);
        }
        Ok(self.combine(&values).truncate(self.ctx.digits()))
    }

    pub fn evaluate_q(&self, z: &Q) -> Result<Padic, LociError> {
        self.evaluate(&self.ctx.number(z))
    }

    /// Power series of the function in `t`, where `z = ω(a) + p t` on the disk of `a`.
    pub fn local_series(&self, a: u64) -> Result<Vec<Padic>, LociError> {
        let p = self.prime();
        let table = self.ctx.table();
        let disk = table.disk(a).ok_or_else(|| PadicError::BadDisk {
            p,
            residue: a.to_string(),
        })?;
        let len = table.degree;
        let one = {
            let mut s = vec![Padic::one(p, self.ctx.digits())];
            s.resize(len, Padic::zero(p, self.ctx.digits()));
            s
        };
        let mut cache: BTreeMap<Target, Vec<Padic>> = BTreeMap::new();
        for t in self.targets() {
            let k = match t {
                Target::Log => 0,
                Target::Li(k) => k,
            };
            if k > table.max_weight {
                return Err(PadicError::WeightOutOfRange(k).into());
            }
            cache.insert(t, disk.series(k).iter().take(len).cloned().collect());
        }
        let mut total: Vec<Padic> = vec![Padic::zero(p, self.ctx.digits()); len];
        for (m, c) in &self.terms {
            let mut s = one.clone();
            for (v, e) in m.pairs() {
                for _ in 0..*e {
                    s = series_mul(&s, &cache[v], len);
                }
            }
            for (acc, x) in total.iter_mut().zip(&s) {
                *acc = acc.add(&x.mul(c));
            }
        }
        Ok(total)
    }

    /// Value through the local series; agrees with [`ColemanFunction::evaluate`].
    pub fn evaluate_local(&self, z: &Padic) -> Result<Padic, LociError> {
        self.check_disk(z)?;
        let disk = self.ctx.table().disk_of(z)?;
        let s = self.local_series(disk.residue)?;
        Ok(eval_series(&s, &disk.parameter(z)).truncate(self.ctx.digits()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| serde_json::json!({"monomial": render(m), "coeff": self.ctx.policy().report(c).to_json()}))
            .collect();
        serde_json::json!({"id": self.id, "p": self.prime(), "weight": self.weight, "terms": terms})
    }
}

impl fmt::Display for ColemanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({})*{}", self.ctx.policy().report(c), render(m)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi, Poly};
    use crate::galois::SymbolPoly;
    use crate::padic::{LocalPolylogTable, PadicPolicy};

    pub(crate) fn weight_two() -> SpecializedElement {
        let t = |x: Target| Poly::<Target, SymbolPoly>::var(x);
        let half = Poly::<Target, SymbolPoly>::constant(SymbolPoly::constant(q(1, 2)));
        SpecializedElement {
            poly: t(Target::Li(2)) - half * t(Target::Log) * t(Target::Li(1)),
        }
    }

    fn ctx(p: u64, n: u32) -> PadicContext {
        let policy = PadicPolicy::default();
        PadicContext::from_table(
            LocalPolylogTable::build(p, n, policy.internal_digits()).unwrap(),
            policy,
        )
    }

    #[test]
    fn weight_two_vanishes_on_known_points() {
        let c = ctx(5, 2);
        let f = assemble_coleman(&weight_two(), &c, "F2").unwrap();
        assert_eq!(f.weight(), 2);
        for z in [qi(2), q(1, 2), qi(-1)] {
            assert!(c.policy().is_zero(&f.evaluate_q(&z).unwrap()), "{z}");
        }
        assert!(!c.policy().is_zero(&f.evaluate_q(&qi(3)).unwrap()));
        assert!(matches!(
            f.evaluate_q(&qi(6)),
            Err(LociError::Padic(PadicError::BadDisk { .. }))
        ));
        assert!(matches!(
            f.evaluate_q(&qi(5)),
            Err(LociError::Padic(PadicError::BadDisk { .. }))
        ));
    }

    #[test]
    fn local_series_matches_point_evaluation() {
        let c = ctx(7, 2);
        let f = assemble_coleman(&weight_two(), &c, "F2").unwrap();
        for z in [qi(3), q(2, 5), qi(-12), q(11, 3)] {
            let a = f.evaluate_q(&z).unwrap();
            let b = f.evaluate_local(&c.number(&z)).unwrap();
            assert!(a.sub(&b).valuation() >= c.digits() - 2, "{z}");
        }
    }

    #[test]
    fn zero_element_gives_zero_function() {
        let c = ctx(5, 2);
        let f = assemble_coleman(&SpecializedElement { poly: Poly::new() }, &c, "0").unwrap();
        assert!(f.is_zero());
        assert!(f.evaluate_q(&qi(2)).unwrap().is_zero());
    }
}
