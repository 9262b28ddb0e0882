//! Exact basis certificates and the period expressions for `f_{στ}`.

use num_traits::Zero;

use super::expand::BasisExpander;
use super::expression::MotivicExpression;
use super::symbol::{sigma, tau, PlaceSet};
use super::table::PeriodTable;
use super::GaloisError;
use crate::algebra::{q, qi, Matrix, Q};
use crate::shuffle::{project_bidegree, tensor, ShuffleElement, TensorElement, Word};

#[derive(Clone, Debug)]
pub struct BasisCertificate {
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub matrix: Matrix<Q>,
    pub determinant: Q,
}

fn lg(n: i64) -> MotivicExpression {
    MotivicExpression::log(&qi(n)).expect("nonzero")
}

fn li(n: u32, z: Q) -> MotivicExpression {
    MotivicExpression::li(n, &z).expect("valid symbol")
}

/// The degree-three elements over `{2, 3}` whose `Δ′_{1,2}` images are certified independent.
pub fn degree3_basis() -> Vec<(String, MotivicExpression)> {
    let (l2, l3, d) = (lg(2), lg(3), li(2, qi(-2)));
    vec![
        ("log(2)^3".into(), l2.pow(3)),
        ("log(3)^3".into(), l3.pow(3)),
        ("log(2)^2*log(3)".into(), l2.pow(2) * l3.clone()),
        ("log(2)*log(3)^2".into(), l2.clone() * l3.pow(2)),
        ("log(2)*Li2(-2)".into(), l2.clone() * d.clone()),
        ("log(3)*Li2(-2)".into(), l3.clone() * d),
        ("Li3(-2)".into(), li(3, qi(-2))),
        ("Li3(3)".into(), li(3, qi(3))),
    ]
}

fn flatten(t: &TensorElement<Q>, keys: &[(Word, Word)]) -> Vec<Q> {
    keys.iter().map(|k| t.coeff(k)).collect()
}

/// Coordinates of `Δ′_{1,2}` of the degree-three basis in the tensor basis built from weights 1 and 2.
pub fn basis_certificate_deg3(table: &PeriodTable) -> Result<BasisCertificate, GaloisError> {
    let places = PlaceSet::new([2, 3])?;
    let ex = BasisExpander::new(&places, 3, table);
    let lefts = [("log(2)", lg(2)), ("log(3)", lg(3))];
    let rights = [
        ("log(2)^2", lg(2).pow(2)),
        ("log(2)*log(3)", lg(2) * lg(3)),
        ("log(3)^2", lg(3).pow(2)),
        ("Li2(-2)", li(2, qi(-2))),
    ];
    let mut row_labels = Vec::new();
    let mut row_tensors = Vec::new();
    for (ln, le) in &lefts {
        for (rn, re) in &rights {
            row_labels.push(format!("{ln} ⊗ {rn}"));
            row_tensors.push(tensor(
                &ex.basis_form(le.poly())?,
                &ex.basis_form(re.poly())?,
            ));
        }
    }
    let mut keys: Vec<(Word, Word)> = Vec::new();
    let gens = ex.generators();
    for a in gens.words_of_weight(1) {
        for b in gens.words_of_weight(2) {
            keys.push((a.clone(), b));
        }
    }
    let basis_matrix =
        Matrix::from_columns(row_tensors.iter().map(|t| flatten(t, &keys)).collect());
    let mut columns = Vec::new();
    let mut column_labels = Vec::new();
    for (name, e) in degree3_basis() {
        let d = project_bidegree(&ex.reduced_coproduct(e.poly())?, 1, 2);
        let coords = basis_matrix.solve(&flatten(&d, &keys)).ok_or_else(|| {
            GaloisError::Inconsistent(format!("Δ′_(1,2) of {name} outside the tensor basis"))
        })?;
        columns.push(coords);
        column_labels.push(name);
    }
    let matrix = Matrix::from_columns(columns);
    let determinant = matrix.determinant();
    Ok(BasisCertificate {
        row_labels,
        column_labels,
        matrix,
        determinant,
    })
}

/// Solves `Σ c_i · candidate_i = f_target` exactly in the word basis.
pub fn express_word(
    ex: &BasisExpander<'_>,
    target: &Word,
    candidates: &[MotivicExpression],
) -> Result<MotivicExpression, GaloisError> {
    let forms = candidates
        .iter()
        .map(|c| ex.basis_form(c.poly()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut words: Vec<Word> = forms
        .iter()
        .flat_map(|f| f.terms().map(|(w, _)| w.clone()))
        .collect();
    words.push(target.clone());
    words.sort();
    words.dedup();
    let a = Matrix::from_columns(
        forms
            .iter()
            .map(|f| words.iter().map(|w| f.coeff(w)).collect())
            .collect(),
    );
    let b: Vec<Q> = words
        .iter()
        .map(|w| if w == target { qi(1) } else { Q::zero() })
        .collect();
    if a.rank() < candidates.len() {
        return Err(GaloisError::Singular(format!(
            "candidates for {target} are dependent"
        )));
    }
    let x = a.solve(&b).ok_or_else(|| {
        GaloisError::Singular(format!("{target} not in the span of the candidates"))
    })?;
    let mut out = MotivicExpression::zero();
    for (c, e) in x.iter().zip(candidates) {
        out = out + e.scale(c);
    }
    ex.attach(out)
}

/// Expression for `f_{σ_3 τ_ℓ}` together with the place set it was solved over.
#[derive(Clone, Debug)]
pub struct FSigmaTau {
    pub places: PlaceSet,
    pub ambient: PlaceSet,
    pub expression: MotivicExpression,
}

/// Uses the built-in candidates for `{2}` (via `Li4(1/2)`) and `{3}` (via `Li4(3)`, `Li4(9)` over `{2, 3}`).
pub fn f_sigma_tau_expression(
    places: &PlaceSet,
    table: &PeriodTable,
) -> Result<FSigmaTau, GaloisError> {
    let l = places
        .single()
        .ok_or_else(|| GaloisError::NoRecipe(places.to_string()))?;
    let (ambient, candidates) = match l {
        2 => (places.clone(), vec![li(4, q(1, 2)), lg(2).pow(4)]),
        3 => (PlaceSet::new([2, 3])?, vec![li(4, qi(3)), li(4, qi(9))]),
        _ => return Err(GaloisError::NoRecipe(places.to_string())),
    };
    let ex = BasisExpander::new(&ambient, 4, table);
    let target = Word::from_letters(vec![sigma(3), tau(l)]);
    let expression = express_word(&ex, &target, &candidates)?;
    Ok(FSigmaTau {
        places: places.clone(),
        ambient,
        expression,
    })
}

/// Elements spanning weight three modulo primitives, with known primitive coefficients.
pub fn weight3_reference(places: &PlaceSet) -> Result<Vec<MotivicExpression>, GaloisError> {
    match places.primes().collect::<Vec<_>>().as_slice() {
        [2] => Ok(vec![lg(2).pow(3)]),
        [3] => Ok(vec![lg(3).pow(3)]),
        [2, 3] => Ok(degree3_basis().into_iter().map(|(_, e)| e).collect()),
        _ => Err(GaloisError::NoRecipe(places.to_string())),
    }
}

/// Convenience: the single-letter element `f_{σ_n}`.
pub fn zeta_letter(n: u32) -> ShuffleElement<Q> {
    ShuffleElement::letter(&sigma(n))
}
