//! The cocycle over `Z[1/ℓ]` whose evaluation lands on the period point of `−1`.

use num_traits::Zero;
use serde_json::json;

use super::LociError;
use crate::algebra::{qi, RatFunc};
use crate::cocycle::{cocycle_apply, CocycleCoordinates, PolylogWord};
use crate::galois::PolylogSymbol;
use crate::padic::{Padic, PadicContext, PadicError, PadicPolicy};
use crate::shuffle::Generator;

/// Rational functions in period symbols.
pub type SymbolField = RatFunc<PolylogSymbol>;

#[derive(Clone, Debug)]
pub struct SymbolicCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub name: String,
    pub value: Padic,
    pub valuation: i64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub l: u64,
    pub n: u32,
    pub p: u64,
    pub policy: PadicPolicy,
    pub symbolic: Vec<SymbolicCheck>,
    pub numeric: Vec<NumericCheck>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.symbolic.iter().all(|c| c.passed) && self.numeric.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "l": self.l,
            "n": self.n,
            "p": self.p,
            "policy": self.policy.to_json(),
            "passed": self.passed(),
            "symbolic": self.symbolic.iter().map(|c| json!({"check": c.name, "passed": c.passed})).collect::<Vec<_>>(),
            "numeric": self.numeric.iter().map(|c| json!({
                "check": c.name,
                "value": self.policy.report(&c.value).to_json(),
                "valuation": c.valuation,
                "passed": c.passed,
            })).collect::<Vec<_>>(),
        })
    }
}

fn sym(s: PolylogSymbol) -> SymbolField {
    RatFunc::var(s)
}

fn div(a: SymbolField, b: SymbolField) -> SymbolField {
    use crate::algebra::Field;
    a.try_div(&b).expect("nonzero symbol")
}

/// Coordinates `w0 = 0`, `w1 = Li1(−1)/log ℓ`, `w_i = Li_(2i−1)(−1)/ζ(2i−1)`.
pub fn counterexample_coordinates(l: u64, n: u32) -> CocycleCoordinates<SymbolField> {
    let minus_one = qi(-1);
    let w1 = div(
        sym(PolylogSymbol::Li(1, minus_one.clone())),
        sym(PolylogSymbol::Log(qi(l as i64))),
    );
    let higher: Vec<SymbolField> = (3..=n.max(3))
        .filter(|k| k % 2 == 1 && *k <= n)
        .map(|k| {
            div(
                sym(PolylogSymbol::Li(k, minus_one.clone())),
                sym(PolylogSymbol::Zeta(k)),
            )
        })
        .collect();
    CocycleCoordinates::from_w(l, SymbolField::zero(), w1, &higher)
}

/// Period of a single f-letter: `f_τℓ ↦ log ℓ`, `f_σk ↦ ζ(k)`.
fn letter_period(g: &Generator) -> Option<SymbolField> {
    let id = g.id();
    if let Some(l) = id.strip_prefix("tau_") {
        return l
            .parse::<i64>()
            .ok()
            .map(|l| sym(PolylogSymbol::Log(qi(l))));
    }
    if let Some(k) = id.strip_prefix("sigma_") {
        return k.parse::<u32>().ok().map(|k| sym(PolylogSymbol::Zeta(k)));
    }
    None
}

pub fn counterexample_cocycle(
    l: u64,
    n: u32,
    p: u64,
    ctx: &PadicContext,
) -> Result<CounterexampleReport, LociError> {
    if p == l || p <= 3 || ctx.prime() != p {
        return Err(PadicError::UnsupportedPrime(p).into());
    }
    if n < 1 {
        return Err(LociError::Degenerate(
            "weight bound must be positive".into(),
        ));
    }
    let policy = *ctx.policy();
    let c = counterexample_coordinates(l, n);
    let images = cocycle_apply(&c, n)?;
    let mut symbolic = Vec::new();
    symbolic.push(SymbolicCheck {
        name: "log(alpha) = 0".into(),
        passed: images[&PolylogWord::LOG].is_zero(),
    });
    for k in 1..=n {
        let img = &images[&PolylogWord::Li(k)];
        let mut value = SymbolField::zero();
        let mut ok = true;
        for (w, coeff) in img.terms() {
            match w.letters() {
                [g] => match letter_period(g) {
                    Some(per) => value = value + coeff.clone() * per,
                    None => ok = false,
                },
                _ => ok = false,
            }
        }
        let (name, expected) = if k % 2 == 0 {
            (format!("Li{k}(alpha) = 0"), SymbolField::zero())
        } else {
            (
                format!("Li{k}(alpha) = Li{k}(-1)"),
                sym(PolylogSymbol::Li(k, qi(-1))),
            )
        };
        symbolic.push(SymbolicCheck {
            name,
            passed: ok && value == expected,
        });
    }
    let mut numeric = Vec::new();
    let mut push = |name: String, value: Padic, expect_zero: bool| {
        let valuation = policy.reported_valuation(&value);
        let passed = policy.is_zero(&value) == expect_zero;
        numeric.push(NumericCheck {
            name,
            value,
            valuation,
            passed,
        });
    };
    push("log_p(-1)".into(), ctx.log_q(&qi(-1))?, true);
    for k in 1..=n {
        let v = ctx.polylog_q(k, &qi(-1))?;
        if k % 2 == 0 {
            push(format!("Li_p,{k}(-1)"), v, true);
        } else if k == 1 {
            // The coordinate w1 needs log_p(ℓ) to be invertible.
            push(format!("log_p({l})"), ctx.log_q(&qi(l as i64))?, false);
        } else {
            let z = ctx.zeta(k)?;
            if policy.is_zero(&z) {
                return Err(PadicError::IrregularZero { p, k }.into());
            }
            push(format!("zeta_p({k})"), z, false);
        }
    }
    Ok(CounterexampleReport {
        l,
        n,
        p,
        policy,
        symbolic,
        numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::LocalPolylogTable;

    #[test]
    fn minus_one_over_three() {
        let policy = PadicPolicy::default();
        let ctx = PadicContext::from_table(
            LocalPolylogTable::build(5, 4, policy.internal_digits()).unwrap(),
            policy,
        );
        let r = counterexample_cocycle(3, 4, 5, &ctx).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.symbolic.len(), 5);
        assert!(counterexample_cocycle(5, 4, 5, &ctx).is_err());
    }

    #[test]
    fn even_images_vanish_symbolically() {
        let c = counterexample_coordinates(3, 4);
        let img = cocycle_apply(&c, 4).unwrap();
        assert!(img[&PolylogWord::Li(2)].is_zero());
        assert!(img[&PolylogWord::Li(4)].is_zero());
        assert!(!img[&PolylogWord::Li(3)].is_zero());
    }
}
