//! Closed forms of the low-weight generators over a single place, used as references by the verify suites.

use super::ideal::{CoeffPoly, IdealElement, Target};
use crate::algebra::{q, qi, Poly, Q};
use crate::galois::{sigma, tau};
use crate::shuffle::{Generator, Word};

fn fw(letters: &[Generator]) -> CoeffPoly {
    Poly::var(Word::from_letters(letters.to_vec()))
}

fn t(x: Target) -> Poly<Target, CoeffPoly> {
    Poly::var(x)
}

fn c(p: CoeffPoly) -> Poly<Target, CoeffPoly> {
    Poly::constant(p)
}

fn cq(x: Q) -> Poly<Target, CoeffPoly> {
    Poly::constant(CoeffPoly::constant(x))
}

/// `Li2 − (1/2) log Li1`.
pub fn weight_two() -> IdealElement {
    IdealElement::new(t(Target::Li(2)) - cq(q(1, 2)) * t(Target::Log) * t(Target::Li(1)))
}

/// `f_σ f_τ Li4 − f_στ log Li3 − (1/24) log³ Li1 (f_σ f_τ − 4 f_στ)` with `σ = σ_3`, `τ = τ_ℓ`.
pub fn weight_four(l: u64) -> IdealElement {
    let (s, ta) = (sigma(3), tau(l));
    let fs_ft = fw(std::slice::from_ref(&s)) * fw(std::slice::from_ref(&ta));
    let fst = fw(&[s, ta]);
    let log3_li1 = t(Target::Log) * t(Target::Log) * t(Target::Log) * t(Target::Li(1));
    IdealElement::new(
        c(fs_ft.clone()) * t(Target::Li(4))
            - c(fst.clone()) * t(Target::Log) * t(Target::Li(3))
            - cq(q(1, 24)) * log3_li1 * c(fs_ft - fst.scale(&qi(4))),
    )
}
