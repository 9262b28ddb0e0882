//! Period table: primitive coefficients that the coproduct cannot see.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expand::{BasisExpander, Primitive};
use super::symbol::{PlaceSet, PolylogSymbol};
use super::GaloisError;
use crate::algebra::{format_q, parse_q, qi, Q};
use crate::shuffle::json::{from_terms, to_terms, TermJson};

pub const PROVENANCE_P3_CHOICE: &str = "axiom: chosen complement P3 = span{Li3(-2), Li3(3)}";

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodEntry {
    pub symbol: PolylogSymbol,
    pub places: PlaceSet,
    /// Coefficient of the primitive generator; `None` while unknown.
    pub primitive: Option<Q>,
    pub provenance: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PeriodTable {
    entries: BTreeMap<(PlaceSet, PolylogSymbol), PeriodEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct EntryJson {
    symbol: String,
    #[serde(rename = "Z")]
    z: Vec<u64>,
    basis_form: Option<Vec<TermJson>>,
    primitive_coefficient: String,
    provenance: String,
}

impl PeriodTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Table holding only the choice of weight-3 complement over `{2, 3}`.
    pub fn with_axioms() -> Self {
        let mut t = Self::new();
        let s = PlaceSet::new([2, 3]).expect("primes");
        for z in [-2, 3] {
            t.insert(PeriodEntry {
                symbol: PolylogSymbol::Li(3, qi(z)),
                places: s.clone(),
                primitive: Some(qi(0)),
                provenance: PROVENANCE_P3_CHOICE.to_string(),
            });
        }
        t
    }

    pub fn insert(&mut self, e: PeriodEntry) {
        self.entries.insert((e.places.clone(), e.symbol.clone()), e);
    }

    pub fn get(&self, places: &PlaceSet, sym: &PolylogSymbol) -> Option<&PeriodEntry> {
        self.entries.get(&(places.clone(), sym.clone()))
    }

    pub fn primitive(&self, places: &PlaceSet, sym: &PolylogSymbol) -> Option<Q> {
        self.get(places, sym).and_then(|e| e.primitive.clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = &PeriodEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<EntryJson> = self
            .entries
            .values()
            .map(|e| {
                let ex = BasisExpander::new(&e.places, e.symbol.weight().max(3), self);
                let basis_form = ex
                    .expand_symbol(&e.symbol)
                    .ok()
                    .and_then(|x| x.full())
                    .map(|b| to_terms(&b));
                EntryJson {
                    symbol: e.symbol.to_string(),
                    z: e.places.primes().collect(),
                    basis_form,
                    primitive_coefficient: e
                        .primitive
                        .as_ref()
                        .map_or_else(|| "unknown".to_string(), format_q),
                    provenance: e.provenance.clone(),
                }
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }

    /// Parses a table and checks stored basis forms against recomputation.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, GaloisError> {
        let rows: Vec<EntryJson> = serde_json::from_value(v.clone())
            .map_err(|e| GaloisError::TableFormat(e.to_string()))?;
        let mut t = Self::new();
        for r in &rows {
            let symbol: PolylogSymbol = r.symbol.parse()?;
            let places = PlaceSet::new(r.z.iter().copied())?;
            let primitive = match r.primitive_coefficient.as_str() {
                "unknown" => None,
                s => Some(parse_q(s).map_err(|e| GaloisError::TableFormat(e.to_string()))?),
            };
            t.insert(PeriodEntry {
                symbol,
                places,
                primitive,
                provenance: r.provenance.clone(),
            });
        }
        for r in &rows {
            let Some(stored) = &r.basis_form else {
                continue;
            };
            let symbol: PolylogSymbol = r.symbol.parse()?;
            let places = PlaceSet::new(r.z.iter().copied())?;
            let ex = BasisExpander::new(&places, symbol.weight().max(3), &t);
            let stored = from_terms(stored, ex.generators())
                .map_err(|e| GaloisError::TableFormat(e.to_string()))?;
            let exp = ex.expand_symbol(&symbol)?;
            let recomputed = match exp.primitive {
                Primitive::Exact(_) => exp.full().expect("complete"),
                Primitive::Unknown(_) => exp.non_primitive,
            };
            if recomputed != stored {
                return Err(GaloisError::Inconsistent(format!(
                    "stored basis form of {symbol} over {places}"
                )));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn json_round_trip() {
        let mut t = PeriodTable::with_axioms();
        t.insert(PeriodEntry {
            symbol: PolylogSymbol::Li(3, q(1, 2)),
            places: PlaceSet::new([2]).unwrap(),
            primitive: Some(q(7, 8)),
            provenance: "test".into(),
        });
        t.insert(PeriodEntry {
            symbol: PolylogSymbol::Li(3, qi(9)),
            places: PlaceSet::new([2, 3]).unwrap(),
            primitive: None,
            provenance: "test".into(),
        });
        let v = t.to_json();
        assert_eq!(PeriodTable::from_json(&v).unwrap(), t);
        let text = v.to_string();
        assert!(text.contains(r#""primitiveCoefficient":"unknown""#));
        assert!(text.contains(r#""primitiveCoefficient":"7/8""#));
    }

    #[test]
    fn tampered_basis_form_is_rejected() {
        let t = PeriodTable::with_axioms();
        let mut v = t.to_json();
        v[0]["basisForm"][0]["coeff"] = serde_json::json!("5");
        assert!(PeriodTable::from_json(&v).is_err());
    }
}
