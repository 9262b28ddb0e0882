use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::GeometricError;
use crate::algebra::gcd::{div_exact, gcd};
use crate::algebra::{format_q, parse_q, Monomial, Poly, RatFunc};
use crate::shuffle::{GeneratorSet, LyndonPoly, Word};

/// Fraction field of the f-word ring, in Lyndon-word variables.
pub type FracField = RatFunc<Word>;
/// Coefficients of an ideal element: polynomials in Lyndon f-words.
pub type CoeffPoly = LyndonPoly;

/// Formal target variables `log, Li_1, ..., Li_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Target {
    Log,
    Li(u32),
}

impl Target {
    pub fn weight(&self) -> u32 {
        match self {
            Target::Log => 1,
            Target::Li(k) => *k,
        }
    }

    pub fn all(n: u32) -> Vec<Target> {
        std::iter::once(Target::Log)
            .chain((1..=n).map(Target::Li))
            .collect()
    }

    pub fn parse(s: &str) -> Option<Target> {
        if s == "log" {
            return Some(Target::Log);
        }
        s.strip_prefix("Li")
            .and_then(|k| k.parse().ok())
            .filter(|k| *k >= 1)
            .map(Target::Li)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Log => f.write_str("log"),
            Target::Li(k) => write!(f, "Li{k}"),
        }
    }
}

pub(crate) fn weighted_degree(m: &Monomial<Target>) -> u32 {
    m.weighted_degree(|t| t.weight())
}

/// Order on target monomials: weighted degree, then lex with `Li_n > ... > Li_1 > log`.
pub(crate) fn target_order(a: &Monomial<Target>, b: &Monomial<Target>) -> std::cmp::Ordering {
    weighted_degree(a)
        .cmp(&weighted_degree(b))
        .then_with(|| a.cmp(b))
}

/// An element of the Chabauty–Kim ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealElement {
    poly: Poly<Target, CoeffPoly>,
}

impl IdealElement {
    pub fn new(poly: Poly<Target, CoeffPoly>) -> Self {
        IdealElement { poly }
    }

    pub fn poly(&self) -> &Poly<Target, CoeffPoly> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Terms sorted descending in the target order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial<Target>, &CoeffPoly)> {
        let mut t: Vec<_> = self.poly.terms().collect();
        t.sort_by(|a, b| target_order(b.0, a.0));
        t
    }

    pub fn leading(&self) -> Option<(&Monomial<Target>, &CoeffPoly)> {
        self.sorted_terms().into_iter().next()
    }

    /// Total weight of the leading term, counting f-word lengths.
    pub fn weight(&self) -> u32 {
        self.leading()
            .map(|(m, c)| {
                weighted_degree(m)
                    + c.terms()
                        .map(|(cm, _)| cm.weighted_degree(|w| w.half_weight()))
                        .max()
                        .unwrap_or(0)
            })
            .unwrap_or(0)
    }

    /// Weight of the target part of each term, if all terms agree.
    pub fn target_weight(&self) -> Option<u32> {
        let ws: std::collections::BTreeSet<u32> =
            self.poly.terms().map(|(m, _)| weighted_degree(m)).collect();
        (ws.len() == 1).then(|| *ws.iter().next().expect("one"))
    }

    /// True when every term has the same total weight.
    pub fn is_homogeneous(&self) -> bool {
        let mut ws = std::collections::BTreeSet::new();
        for (m, c) in self.poly.terms() {
            for (cm, _) in c.terms() {
                ws.insert(weighted_degree(m) + cm.weighted_degree(|w| w.half_weight()));
            }
        }
        ws.len() <= 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mut vars = Vec::new();
                for (v, e) in m.pairs().iter().rev() {
                    for _ in 0..*e {
                        vars.push(v.to_string());
                    }
                }
                let coeff: Vec<serde_json::Value> = c
                    .terms()
                    .rev()
                    .map(|(cm, q)| {
                        let mut words = Vec::new();
                        for (w, e) in cm.pairs().iter().rev() {
                            for _ in 0..*e {
                                words.push(w.ids());
                            }
                        }
                        json!({"words": words, "coeff": format_q(q)})
                    })
                    .collect();
                json!({"liMonomial": vars, "coeff": coeff})
            })
            .collect();
        json!({"weight": self.weight(), "targetWeight": self.target_weight(), "terms": terms, "text": self.to_string()})
    }

    pub fn from_json(v: &serde_json::Value, gens: &GeneratorSet) -> Result<Self, GeometricError> {
        let bad = |s: &str| GeometricError::Format(s.to_string());
        let mut poly = Poly::zero();
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let mut pairs = Vec::new();
            for name in t["liMonomial"]
                .as_array()
                .ok_or_else(|| bad("liMonomial"))?
            {
                let s = name.as_str().ok_or_else(|| bad("target name"))?;
                pairs.push((Target::parse(s).ok_or_else(|| bad(s))?, 1));
            }
            let mut coeff = CoeffPoly::zero();
            for c in t["coeff"].as_array().ok_or_else(|| bad("coeff"))? {
                let q = parse_q(c["coeff"].as_str().ok_or_else(|| bad("coeff value"))?)
                    .map_err(|e| bad(&e.to_string()))?;
                let mut wp = Vec::new();
                for w in c["words"].as_array().ok_or_else(|| bad("words"))? {
                    let mut letters = Vec::new();
                    for id in w.as_array().ok_or_else(|| bad("word"))? {
                        let id = id.as_str().ok_or_else(|| bad("letter"))?;
                        letters.push(gens.get(id).ok_or_else(|| bad(id))?.clone());
                    }
                    wp.push((Word::from_letters(letters), 1));
                }
                coeff = coeff + Poly::term(Monomial::from_pairs(wp), q);
            }
            poly = poly + Poly::term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(IdealElement { poly })
    }
}

fn render_coeff(c: &CoeffPoly) -> String {
    let mut parts = Vec::new();
    for (m, q) in c.terms().rev() {
        let mut factors = Vec::new();
        for (w, e) in m.pairs().iter().rev() {
            let name = format!("f({})", w.ids().join(" "));
            factors.push(if *e == 1 { name } else { format!("{name}^{e}") });
        }
        let body = factors.join("*");
        parts.push(match (body.is_empty(), q.is_one()) {
            (true, _) => format_q(q),
            (false, true) => body,
            (false, false) => format!("{}*{body}", format_q(q)),
        });
    }
    parts.join(" + ")
}

impl fmt::Display for IdealElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = m
                .pairs()
                .iter()
                .rev()
                .map(|(v, e)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let mono = mono.join("*");
            let coeff = render_coeff(c);
            let single = c.len() == 1;
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) if single => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sep)?;
            match (coeff.as_str(), mono.is_empty(), single) {
                ("1", false, _) => write!(f, "{mono}")?,
                (_, true, _) => write!(f, "({coeff})")?,
                (_, false, true) => write!(f, "{coeff}*{mono}")?,
                (_, false, false) => write!(f, "({coeff})*{mono}")?,
            }
        }
        Ok(())
    }
}

fn lcm(a: &CoeffPoly, b: &CoeffPoly) -> CoeffPoly {
    let g = gcd(a, b);
    div_exact(&(a.clone() * b.clone()), &g).expect("gcd divides the product")
}

/// Makes `p` monic in its leading target monomial over the fraction field, then clears
/// denominators by their least common multiple; the sign makes the leading rational coefficient positive.
pub fn normalize(p: &Poly<Target, FracField>) -> IdealElement {
    let mut terms: Vec<_> = p.terms().collect();
    if terms.is_empty() {
        return IdealElement::new(Poly::zero());
    }
    terms.sort_by(|a, b| target_order(b.0, a.0));
    let lc = terms[0].1.clone();
    let inv = crate::algebra::Field::try_inv(&lc).expect("nonzero");
    let monic: Vec<(Monomial<Target>, FracField)> = terms
        .iter()
        .map(|(m, c)| ((*m).clone(), (*c).clone() * inv.clone()))
        .collect();
    let l = monic
        .iter()
        .fold(CoeffPoly::one(), |acc, (_, c)| lcm(&acc, c.denom()));
    let mut out = Poly::zero();
    for (m, c) in &monic {
        let factor = div_exact(&l, c.denom()).expect("lcm is a multiple");
        out.add_term(m.clone(), c.numer().clone() * factor);
    }
    let e = IdealElement::new(out);
    let sign_negative = e
        .leading()
        .and_then(|(_, c)| c.lex_leading().map(|(_, q)| q.is_negative()))
        .unwrap_or(false);
    if sign_negative {
        IdealElement::new(e.poly.scale(&-CoeffPoly::one()))
    } else {
        e
    }
}
