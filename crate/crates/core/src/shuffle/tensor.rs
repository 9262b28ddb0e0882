//! Finite tensors over an ordered basis.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::Ring;

/// Element of `A ⊗ A` in a basis indexed by `B`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor2<B: Ord, R> {
    terms: BTreeMap<(B, B), R>,
}

/// Element of `A ⊗ A ⊗ A`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor3<B: Ord, R> {
    terms: BTreeMap<(B, B, B), R>,
}

macro_rules! tensor_common {
    ($t:ident, $key:ty) => {
        impl<B: Ord + Clone, R: Ring> $t<B, R> {
            pub fn zero() -> Self {
                $t {
                    terms: BTreeMap::new(),
                }
            }

            pub fn add_term(&mut self, k: $key, c: R) {
                if c.is_zero() {
                    return;
                }
                match self.terms.remove(&k) {
                    Some(old) => {
                        let s = old + c;
                        if !s.is_zero() {
                            self.terms.insert(k, s);
                        }
                    }
                    None => {
                        self.terms.insert(k, c);
                    }
                }
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$key, &R)> {
                self.terms.iter()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn len(&self) -> usize {
                self.terms.len()
            }

            pub fn is_empty(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn coeff(&self, k: &$key) -> R {
                self.terms.get(k).cloned().unwrap_or_else(R::zero)
            }

            pub fn scale(&self, c: &R) -> Self {
                let mut out = Self::zero();
                for (k, x) in &self.terms {
                    out.add_term(k.clone(), x.clone() * c.clone());
                }
                out
            }

            pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> $t<B, S> {
                let mut out = $t::<B, S>::zero();
                for (k, x) in &self.terms {
                    out.add_term(k.clone(), f(x));
                }
                out
            }
        }

        impl<B: Ord + Clone, R: Ring> Add for $t<B, R> {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                for (k, c) in rhs.terms {
                    self.add_term(k, c);
                }
                self
            }
        }

        impl<B: Ord + Clone, R: Ring> Neg for $t<B, R> {
            type Output = Self;
            fn neg(self) -> Self {
                $t {
                    terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
                }
            }
        }

        impl<B: Ord + Clone, R: Ring> Sub for $t<B, R> {
            type Output = Self;
            fn sub(self, rhs: Self) -> Self {
                self + (-rhs)
            }
        }

        impl<B: Ord + Clone, R: Ring> Default for $t<B, R> {
            fn default() -> Self {
                Self::zero()
            }
        }
    };
}

tensor_common!(Tensor2, (B, B));
tensor_common!(Tensor3, (B, B, B));

impl<B: Ord + Clone, R: Ring> Tensor2<B, R> {
    /// Applies a linear map `B → Tensor2` to the left factor.
    pub fn expand_left(&self, f: impl Fn(&B) -> Tensor2<B, R>) -> Tensor3<B, R> {
        let mut out = Tensor3::zero();
        for ((l, r), c) in &self.terms {
            for ((a, b), d) in f(l).terms() {
                out.add_term((a.clone(), b.clone(), r.clone()), c.clone() * d.clone());
            }
        }
        out
    }

    /// Applies a linear map `B → Tensor2` to the right factor.
    pub fn expand_right(&self, f: impl Fn(&B) -> Tensor2<B, R>) -> Tensor3<B, R> {
        let mut out = Tensor3::zero();
        for ((l, r), c) in &self.terms {
            for ((a, b), d) in f(r).terms() {
                out.add_term((l.clone(), a.clone(), b.clone()), c.clone() * d.clone());
            }
        }
        out
    }

    pub fn filter(&self, pred: impl Fn(&B, &B) -> bool) -> Self {
        let mut out = Self::zero();
        for ((l, r), c) in &self.terms {
            if pred(l, r) {
                out.add_term((l.clone(), r.clone()), c.clone());
            }
        }
        out
    }
}
