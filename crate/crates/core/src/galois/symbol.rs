//! Place sets, the motivic generator profile, and polylogarithm symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::GaloisError;
use crate::algebra::rational::{is_prime, support};
use crate::algebra::{format_q, parse_q, Q};
use crate::shuffle::{Generator, GeneratorSet};

/// The finite set of inverted primes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PlaceSet(BTreeSet<u64>);

impl PlaceSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self, GaloisError> {
        let s: BTreeSet<u64> = primes.into_iter().collect();
        if s.is_empty() {
            return Err(GaloisError::EmptyPlaceSet);
        }
        if let Some(&bad) = s.iter().find(|&&l| !is_prime(l)) {
            return Err(GaloisError::NotPrime(bad));
        }
        Ok(PlaceSet(s))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: u64) -> bool {
        self.0.contains(&l)
    }

    /// The only prime when `|S| = 1`.
    pub fn single(&self) -> Option<u64> {
        (self.0.len() == 1).then(|| *self.0.iter().next().expect("nonempty"))
    }

    /// Succeeds iff `z` is a nonzero S-unit; otherwise names an offending prime.
    pub fn check_unit(&self, z: &Q) -> Result<(), GaloisError> {
        if z.is_zero() {
            return Err(GaloisError::ZeroArgument);
        }
        match support(z).into_iter().find(|l| !self.contains(*l)) {
            Some(l) => Err(GaloisError::NotSUnit {
                z: format_q(z),
                prime: l,
            }),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &PlaceSet) -> PlaceSet {
        PlaceSet(self.0.union(&other.0).copied().collect())
    }
}

impl fmt::Display for PlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

pub fn tau(l: u64) -> Generator {
    Generator::new(&format!("tau_{l}"), 1).expect("positive weight")
}

pub fn sigma(n: u32) -> Generator {
    Generator::new(&format!("sigma_{n}"), n).expect("positive weight")
}

/// `{τ_ℓ : ℓ ∈ S}` in weight 1 and `σ_{2k+1}` for `3 ≤ 2k+1 ≤ bound`.
pub fn motivic_generators(places: &PlaceSet, weight_bound: u32) -> GeneratorSet {
    let mut gens: Vec<Generator> = places.primes().map(tau).collect();
    gens.extend((3..=weight_bound).step_by(2).map(sigma));
    GeneratorSet::new(gens).expect("distinct ids")
}

/// Atomic motivic period symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PolylogSymbol {
    Log(Q),
    Li(u32, Q),
    Zeta(u32),
}

impl PolylogSymbol {
    pub fn weight(&self) -> u32 {
        match self {
            PolylogSymbol::Log(_) => 1,
            PolylogSymbol::Li(n, _) | PolylogSymbol::Zeta(n) => *n,
        }
    }

    pub fn validate(&self) -> Result<(), GaloisError> {
        match self {
            PolylogSymbol::Log(z) if z.is_zero() => Err(GaloisError::ZeroArgument),
            PolylogSymbol::Li(n, z) if *n == 0 || z.is_zero() || z.is_one() => {
                Err(GaloisError::InvalidSymbol(self.to_string()))
            }
            PolylogSymbol::Zeta(n) if *n < 2 => Err(GaloisError::InvalidSymbol(self.to_string())),
            _ => Ok(()),
        }
    }

    pub fn argument(&self) -> Option<&Q> {
        match self {
            PolylogSymbol::Log(z) | PolylogSymbol::Li(_, z) => Some(z),
            PolylogSymbol::Zeta(_) => None,
        }
    }
}

impl fmt::Display for PolylogSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolylogSymbol::Log(z) => write!(f, "log({})", format_q(z)),
            PolylogSymbol::Li(n, z) => write!(f, "Li{}({})", n, format_q(z)),
            PolylogSymbol::Zeta(n) => write!(f, "zeta({n})"),
        }
    }
}

impl FromStr for PolylogSymbol {
    type Err = GaloisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GaloisError::InvalidSymbol(s.to_string());
        let s = s.trim();
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let arg = rest.strip_suffix(')').ok_or_else(bad)?;
        let sym = if head == "log" {
            PolylogSymbol::Log(parse_q(arg).map_err(|_| bad())?)
        } else if head == "zeta" {
            PolylogSymbol::Zeta(arg.parse().map_err(|_| bad())?)
        } else if let Some(n) = head.strip_prefix("Li") {
            PolylogSymbol::Li(
                n.parse().map_err(|_| bad())?,
                parse_q(arg).map_err(|_| bad())?,
            )
        } else {
            return Err(bad());
        };
        sym.validate()?;
        Ok(sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn places_and_units() {
        let s = PlaceSet::new([3, 2]).unwrap();
        assert_eq!(s.to_string(), "{2,3}");
        assert!(s.check_unit(&q(-9, 8)).is_ok());
        assert_eq!(
            s.check_unit(&qi(10)),
            Err(GaloisError::NotSUnit {
                z: "10".into(),
                prime: 5
            })
        );
        assert!(PlaceSet::new([4]).is_err());
        assert!(PlaceSet::new([]).is_err());
    }

    #[test]
    fn generator_profile() {
        let s = PlaceSet::new([2, 3]).unwrap();
        let g = motivic_generators(&s, 4);
        let ids: Vec<&str> = g.iter().map(|x| x.id()).collect();
        assert_eq!(ids, vec!["sigma_3", "tau_2", "tau_3"]);
        assert_eq!(motivic_generators(&s, 7).len(), 5);
    }

    #[test]
    fn symbols_parse_and_print() {
        for s in ["log(3)", "Li4(1/2)", "Li3(-2)", "zeta(3)"] {
            assert_eq!(s.parse::<PolylogSymbol>().unwrap().to_string(), s);
        }
        assert!("Li2(1)".parse::<PolylogSymbol>().is_err());
        assert!("zeta(1)".parse::<PolylogSymbol>().is_err());
    }
}
