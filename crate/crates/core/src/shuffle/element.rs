//! Elements of the shuffle Hopf algebra and of its tensor square.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::tensor::{Tensor2, Tensor3};
use super::word::{Generator, GeneratorSet, Word};
use super::ShuffleError;
use crate::algebra::{format_q, Ring, Q};

pub type TensorElement<R = Q> = Tensor2<Word, R>;
pub type TensorElement3<R = Q> = Tensor3<Word, R>;

/// Finite linear combination of basis words `f_w`.
#[derive(Clone, PartialEq, Debug)]
pub struct ShuffleElement<R = Q> {
    terms: BTreeMap<Word, R>,
}

/// Multiset of shuffles of two letter sequences.
pub fn shuffle_words(u: &[Generator], v: &[Generator]) -> BTreeMap<Vec<Generator>, u64> {
    let (n, m) = (u.len(), v.len());
    // table[i][j] = shuffles of u[i..] and v[j..]
    let mut table: Vec<Vec<BTreeMap<Vec<Generator>, u64>>> =
        vec![vec![BTreeMap::new(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            let mut cell: BTreeMap<Vec<Generator>, u64> = BTreeMap::new();
            if i == n && j == m {
                cell.insert(Vec::new(), 1);
            }
            if i < n {
                for (w, c) in &table[i + 1][j] {
                    let mut x = Vec::with_capacity(w.len() + 1);
                    x.push(u[i].clone());
                    x.extend(w.iter().cloned());
                    *cell.entry(x).or_insert(0) += c;
                }
            }
            if j < m {
                for (w, c) in &table[i][j + 1] {
                    let mut x = Vec::with_capacity(w.len() + 1);
                    x.push(v[j].clone());
                    x.extend(w.iter().cloned());
                    *cell.entry(x).or_insert(0) += c;
                }
            }
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

impl<R: Ring> ShuffleElement<R> {
    pub fn zero() -> Self {
        ShuffleElement {
            terms: BTreeMap::new(),
        }
    }

    /// The unit `f_∅`.
    pub fn unit() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, R::one())
    }

    pub fn letter(g: &Generator) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn term(w: Word, c: R) -> Self {
        let mut s = Self::zero();
        s.add_term(w, c);
        s
    }

    pub fn constant(c: R) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Word, R)>) -> Self {
        let mut s = Self::zero();
        for (w, c) in it {
            s.add_term(w, c);
        }
        s
    }

    pub fn add_term(&mut self, w: Word, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(w, s);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &R)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(w, x)| (w.clone(), x.clone() * c.clone())),
        )
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> ShuffleElement<S> {
        ShuffleElement::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Half-weight `n` component.
    pub fn component(&self, n: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.half_weight() == n)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Half-weight if all terms share one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|w| w.half_weight());
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn uses_only(&self, gens: &GeneratorSet) -> bool {
        self.terms.keys().all(|w| gens.contains_word(w))
    }

    /// Shuffle product, unchecked.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a.clone() * b.clone();
                for (w, m) in shuffle_words(u.letters(), v.letters()) {
                    out.add_term(
                        Word::from_letters(w),
                        ab.clone().scale_q(&Q::from_integer(m.into())),
                    );
                }
            }
        }
        out
    }

    pub fn shuffle_pow(&self, n: u32) -> Self {
        (0..n).fold(Self::unit(), |acc, _| acc.shuffle(self))
    }

    /// Deconcatenation coproduct.
    pub fn deconcat(&self) -> TensorElement<R> {
        let mut out = Tensor2::zero();
        for (w, c) in &self.terms {
            for k in 0..=w.len() {
                let (a, b) = w.split_at(k);
                out.add_term((a, b), c.clone());
            }
        }
        out
    }

    /// `Δ′x = Δx − x⊗1 − 1⊗x`.
    pub fn reduced_coproduct(&self) -> TensorElement<R> {
        let mut out = self.deconcat();
        for (w, c) in &self.terms {
            out.add_term((w.clone(), Word::empty()), -c.clone());
            out.add_term((Word::empty(), w.clone()), -c.clone());
        }
        out
    }
}

/// Shuffle product with the generator-set precondition enforced.
pub fn shuffle_product<R: Ring>(
    gens: &GeneratorSet,
    a: &ShuffleElement<R>,
    b: &ShuffleElement<R>,
) -> Result<ShuffleElement<R>, ShuffleError> {
    for x in [a, b] {
        if let Some((w, _)) = x.terms().find(|(w, _)| !gens.contains_word(w)) {
            return Err(ShuffleError::ForeignWord(w.to_string()));
        }
    }
    Ok(a.shuffle(b))
}

pub fn deconcat_word<R: Ring>(w: &Word) -> TensorElement<R> {
    ShuffleElement::<R>::word(w.clone()).deconcat()
}

pub fn reduced_word<R: Ring>(w: &Word) -> TensorElement<R> {
    ShuffleElement::<R>::word(w.clone()).reduced_coproduct()
}

/// Keeps the terms of bidegree `(i, j)`.
pub fn project_bidegree<R: Ring>(t: &TensorElement<R>, i: u32, j: u32) -> TensorElement<R> {
    t.filter(|a, b| a.half_weight() == i && b.half_weight() == j)
}

/// Pure tensor `a ⊗ b`.
pub fn tensor<R: Ring>(a: &ShuffleElement<R>, b: &ShuffleElement<R>) -> TensorElement<R> {
    let mut out = Tensor2::zero();
    for (u, x) in a.terms() {
        for (v, y) in b.terms() {
            out.add_term((u.clone(), v.clone()), x.clone() * y.clone());
        }
    }
    out
}

/// Product in `A ⊗ A` with componentwise shuffle.
pub fn tensor_mul<R: Ring>(s: &TensorElement<R>, t: &TensorElement<R>) -> TensorElement<R> {
    let mut out = Tensor2::zero();
    for ((a, b), x) in s.terms() {
        for ((c, d), y) in t.terms() {
            let l = ShuffleElement::<R>::word(a.clone()).shuffle(&ShuffleElement::word(c.clone()));
            let r = ShuffleElement::<R>::word(b.clone()).shuffle(&ShuffleElement::word(d.clone()));
            out = out + tensor(&l, &r).scale(&(x.clone() * y.clone()));
        }
    }
    out
}

/// `(Δ′⊗id − id⊗Δ′)(t)`; vanishes on the image of `Δ′`.
pub fn cobar_defect<R: Ring>(t: &TensorElement<R>) -> TensorElement3<R> {
    t.expand_left(reduced_word) - t.expand_right(reduced_word)
}

/// `(Δ⊗id)Δ − (id⊗Δ)Δ` applied to `x`.
pub fn coassociativity_defect<R: Ring>(x: &ShuffleElement<R>) -> TensorElement3<R> {
    let d = x.deconcat();
    d.expand_left(deconcat_word) - d.expand_right(deconcat_word)
}

impl<R: Ring> Default for ShuffleElement<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> Zero for ShuffleElement<R> {
    fn zero() -> Self {
        ShuffleElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for ShuffleElement<R> {
    fn one() -> Self {
        Self::unit()
    }
}

impl<R: Ring> Add for ShuffleElement<R> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<R: Ring> Neg for ShuffleElement<R> {
    type Output = Self;
    fn neg(self) -> Self {
        ShuffleElement {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<R: Ring> Sub for ShuffleElement<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

/// Ring multiplication is the shuffle product.
impl<R: Ring> Mul for ShuffleElement<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.shuffle(&rhs)
    }
}

impl<R: Ring> Ring for ShuffleElement<R> {
    fn from_rational(q: &Q) -> Self {
        Self::constant(R::from_rational(q))
    }
}

impl fmt::Display for ShuffleElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*{}", format_q(c), w))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    fn gens() -> GeneratorSet {
        GeneratorSet::from_pairs(&[("tau", 1), ("sigma", 3), ("e0", 1)]).unwrap()
    }

    fn w(g: &GeneratorSet, ids: &[&str]) -> Word {
        Word::from_letters(ids.iter().map(|i| g.get(i).unwrap().clone()).collect())
    }

    fn f(g: &GeneratorSet, ids: &[&str]) -> ShuffleElement {
        ShuffleElement::word(w(g, ids))
    }

    #[test]
    fn two_letter_shuffle() {
        let g = gens();
        let s = f(&g, &["tau"]).shuffle(&f(&g, &["sigma"]));
        assert_eq!(s, f(&g, &["tau", "sigma"]) + f(&g, &["sigma", "tau"]));
        assert_eq!(
            f(&g, &["tau"]).shuffle(&f(&g, &["tau"])),
            f(&g, &["tau", "tau"]).scale(&qi(2))
        );
    }

    #[test]
    fn shuffle_powers_of_letters() {
        let g = gens();
        for n in 0..=6u32 {
            let lhs = f(&g, &["e0"]).shuffle_pow(n);
            let rhs = ShuffleElement::word(Word::repeat(g.get("e0").unwrap(), n as usize))
                .scale(&Q::from_integer(crate::algebra::rational::factorial(n)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn deconcatenation_examples() {
        let g = gens();
        let st = f(&g, &["sigma", "tau"]);
        let e = Word::empty();
        let mut expected = TensorElement::zero();
        expected.add_term((e.clone(), w(&g, &["sigma", "tau"])), qi(1));
        expected.add_term((w(&g, &["sigma"]), w(&g, &["tau"])), qi(1));
        expected.add_term((w(&g, &["sigma", "tau"]), e.clone()), qi(1));
        assert_eq!(st.deconcat(), expected);
        let mut unit = TensorElement::zero();
        unit.add_term((e.clone(), e.clone()), qi(1));
        assert_eq!(ShuffleElement::<Q>::unit().deconcat(), unit);
    }

    #[test]
    fn reduced_coproduct_examples() {
        let g = gens();
        assert!(f(&g, &["tau"]).reduced_coproduct().is_zero());
        let d = f(&g, &["sigma", "tau"]).reduced_coproduct();
        assert_eq!(d, tensor(&f(&g, &["sigma"]), &f(&g, &["tau"])));
        let d3 = f(&g, &["tau", "tau", "tau"]).reduced_coproduct();
        let expected = tensor(&f(&g, &["tau"]), &f(&g, &["tau", "tau"]))
            + tensor(&f(&g, &["tau", "tau"]), &f(&g, &["tau"]));
        assert_eq!(d3, expected);
        assert_eq!(project_bidegree(&d, 3, 1), d);
        assert!(project_bidegree(&d, 1, 3).is_zero());
        assert!(project_bidegree(&d3, 0, 3).is_zero());
    }

    #[test]
    fn checked_product_rejects_foreign_words() {
        let g = gens();
        let other = GeneratorSet::from_pairs(&[("x", 1)]).unwrap();
        let x = ShuffleElement::<Q>::letter(other.get("x").unwrap());
        assert!(shuffle_product(&g, &x, &f(&g, &["tau"])).is_err());
        assert!(shuffle_product(&g, &f(&g, &["tau"]), &f(&g, &["e0"])).is_ok());
    }

    #[test]
    fn display_is_canonical() {
        let g = gens();
        let x = f(&g, &["tau", "sigma"]).scale(&q(-1, 2)) + f(&g, &["tau"]);
        assert_eq!(x.to_string(), "1*f(tau) + -1/2*f(tau sigma)");
    }
}
