use std::collections::BTreeMap;

use num_traits::Zero;

use super::ideal::{IdealElement, Target};
use super::GeometricError;
use crate::algebra::{Poly, Q};
use crate::cocycle::{eval_universal, PhiPoly, PolylogWord};
use crate::galois::{MotivicExpression, PlaceSet, SymbolPoly};
use crate::shuffle::lyndon::poly_to_element;
use crate::shuffle::{ShuffleElement, Word};

/// True iff the element maps to zero under the universal evaluation map, expanded in the word basis.
pub fn verify_vanishing(e: &IdealElement, n: u32, places: &PlaceSet) -> bool {
    if e.is_zero() {
        return true;
    }
    let max_target = e
        .poly()
        .vars()
        .into_iter()
        .map(|t| t.weight())
        .max()
        .unwrap_or(1);
    let img = eval_universal(n.max(max_target), places);
    let image_of = |t: &Target| -> ShuffleElement<PhiPoly> {
        let key = match t {
            Target::Log => PolylogWord::LOG,
            Target::Li(k) => PolylogWord::Li(*k),
        };
        img.image(key).cloned().unwrap_or_else(ShuffleElement::zero)
    };
    let mut total: ShuffleElement<PhiPoly> = ShuffleElement::zero();
    for (m, c) in e.poly().terms() {
        let mut prod = poly_to_element(c).map_coeffs(|q| PhiPoly::constant(q.clone()));
        for (t, k) in m.pairs() {
            for _ in 0..*k {
                prod = prod.shuffle(&image_of(t));
            }
        }
        total = total + prod;
    }
    total.is_zero()
}

/// An ideal element whose coefficients are concrete period expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedElement {
    pub poly: Poly<Target, SymbolPoly>,
}

impl SpecializedElement {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut vars = Vec::new();
                for (v, e) in m.pairs().iter().rev() {
                    for _ in 0..*e {
                        vars.push(v.to_string());
                    }
                }
                serde_json::json!({"liMonomial": vars, "coeff": crate::galois::expression::render_symbol_poly(c)})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

/// Replaces each Lyndon f-word in the coefficients by a period expression.
pub fn specialize_coefficients(
    e: &IdealElement,
    assignment: &BTreeMap<Word, MotivicExpression>,
) -> Result<SpecializedElement, GeometricError> {
    let mut missing: Vec<String> = Vec::new();
    for (_, c) in e.poly().terms() {
        for w in c.vars() {
            if !assignment.contains_key(&w) {
                missing.push(w.to_string());
            }
        }
    }
    missing.sort();
    missing.dedup();
    if !missing.is_empty() {
        return Err(GeometricError::Uncovered(missing.join(", ")));
    }
    let poly = e.poly().map_coeffs(|c| {
        c.eval(
            |q: &Q| SymbolPoly::constant(q.clone()),
            |w| assignment[w].poly().clone(),
        )
    });
    Ok(SpecializedElement { poly })
}
