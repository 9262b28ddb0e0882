//! JSON form of shuffle elements: `[{word: [ids], coeff: "p/q"}]`.

use serde::{Deserialize, Serialize};

use super::element::ShuffleElement;
use super::word::{GeneratorSet, Word};
use super::ShuffleError;
use crate::algebra::{format_q, parse_q, Q};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct TermJson {
    pub word: Vec<String>,
    pub coeff: String,
}

pub fn to_terms(x: &ShuffleElement<Q>) -> Vec<TermJson> {
    x.terms()
        .map(|(w, c)| TermJson {
            word: w.ids(),
            coeff: format_q(c),
        })
        .collect()
}

pub fn to_json(x: &ShuffleElement<Q>) -> serde_json::Value {
    serde_json::to_value(to_terms(x)).expect("serializable")
}

pub fn from_terms(
    terms: &[TermJson],
    gens: &GeneratorSet,
) -> Result<ShuffleElement<Q>, ShuffleError> {
    let mut out = ShuffleElement::zero();
    for t in terms {
        let letters = t
            .word
            .iter()
            .map(|id| {
                gens.get(id)
                    .cloned()
                    .ok_or_else(|| ShuffleError::UnknownGenerator(id.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let c = parse_q(&t.coeff).map_err(|e| ShuffleError::Parse(e.to_string()))?;
        out.add_term(Word::from_letters(letters), c);
    }
    Ok(out)
}

pub fn from_json(
    v: &serde_json::Value,
    gens: &GeneratorSet,
) -> Result<ShuffleElement<Q>, ShuffleError> {
    let terms: Vec<TermJson> =
        serde_json::from_value(v.clone()).map_err(|e| ShuffleError::Parse(e.to_string()))?;
    from_terms(&terms, gens)
}
