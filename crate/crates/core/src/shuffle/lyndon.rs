//! Lyndon words and the polynomial structure of the shuffle algebra.
//!
//! Over Q the shuffle algebra is freely generated by Lyndon words, so every
//! element has a unique expression as a polynomial in them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::element::{shuffle_words, ShuffleElement};
use super::word::{Generator, Word};
use crate::algebra::rational::factorial;
use crate::algebra::{Poly, Q};

pub type LyndonPoly = Poly<Word, Q>;

pub fn is_lyndon(w: &[Generator]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| w < &w[k..])
}

/// Duval factorization into a non-increasing sequence of Lyndon words.
pub fn factorize(w: &[Generator]) -> Vec<Word> {
    let n = w.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(Word::from_letters(w[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    out
}

/// Converter between the word basis and Lyndon polynomials, with memoization.
#[derive(Default)]
pub struct LyndonBasis {
    cache: BTreeMap<Word, LyndonPoly>,
}

impl LyndonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expresses `f_w` as a polynomial in Lyndon words.
    pub fn word_to_poly(&mut self, w: &Word) -> LyndonPoly {
        if let Some(p) = self.cache.get(w) {
            return p.clone();
        }
        let p = self.compute(w);
        self.cache.insert(w.clone(), p.clone());
        p
    }

    fn compute(&mut self, w: &Word) -> LyndonPoly {
        if w.is_empty() {
            return LyndonPoly::one();
        }
        if is_lyndon(w.letters()) {
            return LyndonPoly::var(w.clone());
        }
        let factors = factorize(w.letters());
        // Product of the factors as words: α·w + (lexicographically smaller words).
        let mut product: BTreeMap<Vec<Generator>, u64> = BTreeMap::new();
        product.insert(Vec::new(), 1);
        for fct in &factors {
            let mut next = BTreeMap::new();
            for (u, c) in &product {
                for (x, m) in shuffle_words(u, fct.letters()) {
                    *next.entry(x).or_insert(0) += c * m;
                }
            }
            product = next;
        }
        let mut mult: BTreeMap<&Word, u32> = BTreeMap::new();
        for fct in &factors {
            *mult.entry(fct).or_insert(0) += 1;
        }
        let alpha = mult
            .values()
            .fold(num_bigint::BigInt::one(), |a, &m| a * factorial(m));
        let alpha = Q::from_integer(alpha);
        assert_eq!(
            Q::from_integer(product.get(w.letters()).copied().unwrap_or(0).into()),
            alpha,
            "leading multiplicity of a Lyndon product"
        );
        let mut acc = factors
            .iter()
            .fold(LyndonPoly::one(), |a, f| a * LyndonPoly::var(f.clone()));
        for (u, c) in product {
            if u == w.letters() {
                continue;
            }
            assert!(
                u.as_slice() < w.letters(),
                "triangularity of the Lyndon expansion"
            );
            let sub = self.word_to_poly(&Word::from_letters(u));
            acc = acc - sub.scale(&Q::from_integer(c.into()));
        }
        acc.scale(&alpha.recip())
    }

    pub fn to_poly(&mut self, x: &ShuffleElement<Q>) -> LyndonPoly {
        let mut out = LyndonPoly::zero();
        for (w, c) in x.terms() {
            out = out + self.word_to_poly(w).scale(c);
        }
        out
    }
}

/// Evaluates a Lyndon polynomial back in the word basis.
pub fn poly_to_element(p: &LyndonPoly) -> ShuffleElement<Q> {
    p.eval(
        |c| ShuffleElement::constant(c.clone()),
        |w| ShuffleElement::word(w.clone()),
    )
}
