//! Graded generators and words.

use std::fmt;
use std::sync::Arc;

use super::ShuffleError;

/// A graded letter; ordered by id, then half-weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    id: Arc<str>,
    half_weight: u32,
}

impl Generator {
    pub fn new(id: &str, half_weight: u32) -> Result<Self, ShuffleError> {
        if half_weight == 0 {
            return Err(ShuffleError::ZeroWeight(id.to_string()));
        }
        Ok(Generator {
            id: Arc::from(id),
            half_weight,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn half_weight(&self) -> u32 {
        self.half_weight
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Sorted set of generators with unique ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(mut gens: Vec<Generator>) -> Result<Self, ShuffleError> {
        gens.sort();
        for w in gens.windows(2) {
            if w[0].id == w[1].id {
                return Err(ShuffleError::DuplicateId(w[0].id.to_string()));
            }
        }
        Ok(GeneratorSet { gens })
    }

    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Self, ShuffleError> {
        Self::new(
            pairs
                .iter()
                .map(|(i, w)| Generator::new(i, *w))
                .collect::<Result<_, _>>()?,
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| &*g.id == id)
    }

    pub fn contains(&self, g: &Generator) -> bool {
        self.gens.binary_search(g).is_ok()
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.letters().iter().all(|g| self.contains(g))
    }

    /// Number of words of half-weight `n`.
    pub fn graded_dimension(&self, n: u32) -> u64 {
        let n = n as usize;
        let mut d = vec![0u64; n + 1];
        d[0] = 1;
        for k in 1..=n {
            d[k] = self
                .gens
                .iter()
                .filter(|g| g.half_weight as usize <= k)
                .map(|g| d[k - g.half_weight as usize])
                .sum();
        }
        d[n]
    }

    /// All words of half-weight `n`, in canonical order.
    pub fn words_of_weight(&self, n: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_words(n, &mut cur, &mut out);
        out.sort();
        out
    }

    fn extend_words(&self, rest: u32, cur: &mut Vec<Generator>, out: &mut Vec<Word>) {
        if rest == 0 {
            out.push(Word::from_letters(cur.clone()));
            return;
        }
        for g in &self.gens {
            if g.half_weight <= rest {
                cur.push(g.clone());
                self.extend_words(rest - g.half_weight, cur, out);
                cur.pop();
            }
        }
    }

    pub fn union(&self, other: &GeneratorSet) -> Result<GeneratorSet, ShuffleError> {
        let mut all = self.gens.clone();
        for g in &other.gens {
            match self.get(g.id()) {
                Some(h) if h == g => {}
                Some(_) => return Err(ShuffleError::DuplicateId(g.id().to_string())),
                None => all.push(g.clone()),
            }
        }
        GeneratorSet::new(all)
    }
}

/// A word in the generators; ordered by half-weight, then lexicographically by letter id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    half_weight: u32,
    letters: Vec<Generator>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            half_weight: 0,
            letters: Vec::new(),
        }
    }

    pub fn letter(g: &Generator) -> Self {
        Word {
            half_weight: g.half_weight,
            letters: vec![g.clone()],
        }
    }

    pub fn from_letters(letters: Vec<Generator>) -> Self {
        let half_weight = letters.iter().map(|g| g.half_weight).sum();
        Word {
            half_weight,
            letters,
        }
    }

    pub fn repeat(g: &Generator, n: usize) -> Self {
        Self::from_letters(vec![g.clone(); n])
    }

    pub fn half_weight(&self) -> u32 {
        self.half_weight
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut l = self.letters.clone();
        l.extend(other.letters.iter().cloned());
        Word {
            half_weight: self.half_weight + other.half_weight,
            letters: l,
        }
    }

    /// Splits into `(prefix of length k, remainder)`.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        let (a, b) = self.letters.split_at(k);
        (
            Word::from_letters(a.to_vec()),
            Word::from_letters(b.to_vec()),
        )
    }

    pub fn ids(&self) -> Vec<String> {
        self.letters.iter().map(|g| g.id.to_string()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("f()");
        }
        write!(f, "f({})", self.ids().join(" "))
    }
}
