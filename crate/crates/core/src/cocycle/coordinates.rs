use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CocycleError;
use crate::algebra::rational::ord;
use crate::algebra::{format_q, Ring, Q};
use crate::galois::{
    motivic_generators, sigma, tau, BasisExpander, PeriodTable, PlaceSet, PolylogSymbol,
};
use crate::shuffle::{Generator, GeneratorSet, Word};

/// Dual words of the polylogarithmic quotient: `e0^k` and `e1 e0^(k-1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PolylogWord {
    E0(u32),
    Li(u32),
}

impl PolylogWord {
    pub const LOG: PolylogWord = PolylogWord::E0(1);

    pub fn half_weight(&self) -> u32 {
        match self {
            PolylogWord::E0(k) | PolylogWord::Li(k) => *k,
        }
    }

    /// The targets `log, Li_1, ..., Li_n` of the evaluation map.
    pub fn targets(n: u32) -> Vec<PolylogWord> {
        std::iter::once(PolylogWord::LOG)
            .chain((1..=n).map(PolylogWord::Li))
            .collect()
    }
}

impl fmt::Display for PolylogWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolylogWord::E0(1) => f.write_str("e0"),
            PolylogWord::E0(k) => write!(f, "e0^{k}"),
            PolylogWord::Li(1) => f.write_str("e1"),
            PolylogWord::Li(2) => f.write_str("e1e0"),
            PolylogWord::Li(k) => write!(f, "e1e0^{}", k - 1),
        }
    }
}

/// A Brown coordinate `Φ^ρ_λ` with `wt(ρ) = wt(λ)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PhiVar {
    rho: Generator,
    lambda: PolylogWord,
}

impl PhiVar {
    pub fn new(rho: Generator, lambda: PolylogWord) -> Result<Self, CocycleError> {
        let ok = match lambda {
            PolylogWord::E0(1) => rho.half_weight() == 1,
            PolylogWord::E0(_) => false,
            PolylogWord::Li(k) => rho.half_weight() == k,
        };
        if ok {
            Ok(PhiVar { rho, lambda })
        } else {
            Err(CocycleError::InvalidCoordinate(format!(
                "Phi^{}_{}",
                rho.id(),
                lambda
            )))
        }
    }

    pub fn rho(&self) -> &Generator {
        &self.rho
    }

    pub fn lambda(&self) -> PolylogWord {
        self.lambda
    }

    pub fn half_weight(&self) -> u32 {
        self.rho.half_weight()
    }

    /// Short name used when there is a single place: `w0`, `w1`, and `w_i` for `σ_{2i-1}`.
    pub fn w_name(&self) -> String {
        match (self.lambda, self.rho.half_weight()) {
            (PolylogWord::E0(_), _) => "w0".into(),
            (PolylogWord::Li(1), _) => "w1".into(),
            (_, k) => format!("w{}", k.div_ceil(2)),
        }
    }

    /// All coordinates for generators of weight at most `n`.
    pub fn all(gens: &GeneratorSet, n: u32) -> Vec<PhiVar> {
        let mut out = Vec::new();
        for g in gens.iter().filter(|g| g.half_weight() <= n) {
            if g.half_weight() == 1 {
                out.push(PhiVar {
                    rho: g.clone(),
                    lambda: PolylogWord::LOG,
                });
            }
            out.push(PhiVar {
                rho: g.clone(),
                lambda: PolylogWord::Li(g.half_weight()),
            });
        }
        out.sort();
        out
    }
}

impl fmt::Display for PhiVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi[{}|{}]", self.rho.id(), self.lambda)
    }
}

/// Values of the Brown coordinates of one cocycle, in any coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct CocycleCoordinates<R: Ring> {
    gens: GeneratorSet,
    values: BTreeMap<PhiVar, R>,
}

impl<R: Ring> CocycleCoordinates<R> {
    pub fn new(gens: &GeneratorSet) -> Self {
        CocycleCoordinates {
            gens: gens.clone(),
            values: BTreeMap::new(),
        }
    }

    /// Every coordinate up to weight `n` set to zero.
    pub fn zero(gens: &GeneratorSet, n: u32) -> Self {
        let mut c = Self::new(gens);
        for v in PhiVar::all(gens, n) {
            c.values.insert(v, R::zero());
        }
        c
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn set(&mut self, rho: &str, lambda: PolylogWord, value: R) -> Result<(), CocycleError> {
        let g = self
            .gens
            .get(rho)
            .ok_or_else(|| CocycleError::InvalidCoordinate(format!("generator {rho}")))?
            .clone();
        self.values.insert(PhiVar::new(g, lambda)?, value);
        Ok(())
    }

    pub fn insert(&mut self, var: PhiVar, value: R) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: &PhiVar) -> Option<&R> {
        self.values.get(var)
    }

    /// Value of `Φ^ρ_λ`; zero for pairs that are not coordinates.
    pub fn entry(&self, rho: &Generator, lambda: PolylogWord) -> Result<R, CocycleError> {
        match PhiVar::new(rho.clone(), lambda) {
            Ok(v) => self
                .values
                .get(&v)
                .cloned()
                .ok_or_else(|| CocycleError::MissingCoordinate(v.to_string())),
            Err(_) => Ok(R::zero()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PhiVar, &R)> {
        self.values.iter()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> CocycleCoordinates<S> {
        CocycleCoordinates {
            gens: self.gens.clone(),
            values: self.values.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    /// Coordinates over a single place `ℓ` from `w0, w1` and `w_2, w_3, ...`.
    pub fn from_w(l: u64, w0: R, w1: R, higher: &[R]) -> Self {
        let n = 2 * higher.len() as u32 + 1;
        let places = PlaceSet::new([l]).expect("prime");
        let mut c = Self::new(&motivic_generators(&places, n.max(1)));
        let t = tau(l);
        c.insert(
            PhiVar {
                rho: t.clone(),
                lambda: PolylogWord::LOG,
            },
            w0,
        );
        c.insert(
            PhiVar {
                rho: t,
                lambda: PolylogWord::Li(1),
            },
            w1,
        );
        for (i, w) in higher.iter().enumerate() {
            let k = 2 * i as u32 + 3;
            c.insert(
                PhiVar {
                    rho: sigma(k),
                    lambda: PolylogWord::Li(k),
                },
                w.clone(),
            );
        }
        c
    }
}

/// `(ord_ℓ z, -ord_ℓ(1 - z))`.
pub fn kappa_coordinates(z: &Q, l: u64) -> Result<(i64, i64), CocycleError> {
    if z.is_zero() || z.is_one() {
        return Err(CocycleError::Degenerate(format_q(z)));
    }
    Ok((ord(z, l), -ord(&(Q::one() - z), l)))
}

/// The Kummer image of an S-integral point, with higher coordinates read from the period table.
pub fn kappa(
    z: &Q,
    places: &PlaceSet,
    n: u32,
    table: &PeriodTable,
) -> Result<CocycleCoordinates<Q>, CocycleError> {
    if z.is_zero() || z.is_one() {
        return Err(CocycleError::Degenerate(format_q(z)));
    }
    places.check_unit(z)?;
    places.check_unit(&(Q::one() - z))?;
    let ex = BasisExpander::new(places, n, table);
    let gens = ex.generators().clone();
    let mut c = CocycleCoordinates::new(&gens);
    for l in places.primes() {
        let (w0, w1) = kappa_coordinates(z, l)?;
        c.insert(
            PhiVar {
                rho: tau(l),
                lambda: PolylogWord::LOG,
            },
            Q::from_integer(BigInt::from(w0)),
        );
        c.insert(
            PhiVar {
                rho: tau(l),
                lambda: PolylogWord::Li(1),
            },
            Q::from_integer(BigInt::from(w1)),
        );
    }
    for g in gens
        .iter()
        .filter(|g| g.half_weight() > 1 && g.half_weight() <= n)
    {
        let k = g.half_weight();
        let form = ex.full_symbol(&PolylogSymbol::Li(k, z.clone()))?;
        c.insert(
            PhiVar {
                rho: g.clone(),
                lambda: PolylogWord::Li(k),
            },
            form.coeff(&Word::letter(g)),
        );
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};

    #[test]
    fn kummer_examples() {
        assert_eq!(kappa_coordinates(&q(1, 2), 2).unwrap(), (-1, 1));
        assert_eq!(kappa_coordinates(&qi(9), 3).unwrap(), (2, 0));
        assert_eq!(kappa_coordinates(&qi(-1), 2).unwrap(), (0, -1));
        assert_eq!(kappa_coordinates(&qi(-1), 3).unwrap(), (0, 0));
        assert!(matches!(
            kappa_coordinates(&qi(1), 2),
            Err(CocycleError::Degenerate(_))
        ));
        assert!(matches!(
            kappa_coordinates(&qi(0), 2),
            Err(CocycleError::Degenerate(_))
        ));
    }

    #[test]
    fn coordinate_weights_are_checked() {
        assert!(PhiVar::new(sigma(3), PolylogWord::LOG).is_err());
        assert!(PhiVar::new(sigma(3), PolylogWord::Li(2)).is_err());
        assert_eq!(
            PhiVar::new(sigma(5), PolylogWord::Li(5)).unwrap().w_name(),
            "w3"
        );
        let places = PlaceSet::new([2, 3]).unwrap();
        assert_eq!(PhiVar::all(&motivic_generators(&places, 4), 4).len(), 5);
    }

    #[test]
    fn kappa_uses_table_for_higher_coordinates() {
        let places = PlaceSet::new([2, 3]).unwrap();
        let c = kappa(&qi(3), &places, 3, &PeriodTable::with_axioms()).unwrap();
        assert_eq!(c.entry(&sigma(3), PolylogWord::Li(3)).unwrap(), qi(0));
        assert_eq!(c.entry(&tau(2), PolylogWord::Li(1)).unwrap(), qi(-1));
        assert!(kappa(&qi(5), &places, 3, &PeriodTable::with_axioms()).is_err());
    }
}
