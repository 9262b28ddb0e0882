//! The six automorphisms of the thrice-punctured line acting on loci.

use std::fmt;

use super::zeros::Locus;
use crate::algebra::Q;
use crate::padic::Padic;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum S3Map {
    Identity,
    OneMinus,
    Inverse,
    InverseOfOneMinus,
    OverMinusOne,
    MinusOneOver,
}

impl S3Map {
    pub const ALL: [S3Map; 6] = [
        S3Map::Identity,
        S3Map::OneMinus,
        S3Map::Inverse,
        S3Map::InverseOfOneMinus,
        S3Map::OverMinusOne,
        S3Map::MinusOneOver,
    ];

    /// Image of a p-adic point; `None` when it leaves the good disks.
    pub fn apply(&self, z: &Padic) -> Option<Padic> {
        let p = z.prime();
        let one = Padic::one(p, z.abs_prec());
        let inv = |x: &Padic| one.try_div(x).ok();
        let w = match self {
            S3Map::Identity => Some(z.clone()),
            S3Map::OneMinus => Some(one.sub(z)),
            S3Map::Inverse => inv(z),
            S3Map::InverseOfOneMinus => inv(&one.sub(z)),
            S3Map::OverMinusOne => inv(&z.sub(&one)).map(|d| z.mul(&d)),
            S3Map::MinusOneOver => inv(z).map(|d| z.sub(&one).mul(&d)),
        }?;
        let good = w.valuation() == 0 && !w.is_zero() && w.residue() != Some(1);
        good.then_some(w)
    }

    pub fn apply_q(&self, z: &Q) -> Option<Q> {
        let one = Q::one();
        let inv = |x: Q| (!x.is_zero()).then(|| x.recip());
        match self {
            S3Map::Identity => Some(z.clone()),
            S3Map::OneMinus => Some(&one - z),
            S3Map::Inverse => inv(z.clone()),
            S3Map::InverseOfOneMinus => inv(&one - z),
            S3Map::OverMinusOne => inv(z - &one).map(|d| z * d),
            S3Map::MinusOneOver => inv(z.clone()).map(|d| (z - &one) * d),
        }
    }
}

impl fmt::Display for S3Map {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            S3Map::Identity => "z",
            S3Map::OneMinus => "1-z",
            S3Map::Inverse => "1/z",
            S3Map::InverseOfOneMinus => "1/(1-z)",
            S3Map::OverMinusOne => "z/(z-1)",
            S3Map::MinusOneOver => "(z-1)/z",
        };
        write!(f, "{s}")
    }
}

/// The orbit of a point, one image per map.
#[derive(Clone, Debug)]
pub struct S3Orbit {
    pub images: Vec<(S3Map, Option<Padic>)>,
}

impl S3Orbit {
    pub fn of(z: &Padic) -> Self {
        S3Orbit {
            images: S3Map::ALL.iter().map(|s| (*s, s.apply(z))).collect(),
        }
    }
}

/// `⋂_σ σ(L)` on the finite zero set of `L`.
pub fn s3_symmetrize(l: &Locus) -> Locus {
    let policy = l.policy;
    let images: Vec<Vec<Padic>> = S3Map::ALL
        .iter()
        .map(|s| {
            // A bad-disk image can never equal a point of L, which lives in good disks.
            l.zeros.iter().filter_map(|z| s.apply(&z.root)).collect()
        })
        .collect();
    let mut out = l.clone();
    out.zeros.retain(|z| {
        images
            .iter()
            .all(|img| img.iter().any(|w| policy.equal(w, &z.root)))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, qi};
    use crate::loci::LocusZero;
    use crate::padic::PadicPolicy;

    fn locus(p: u64, pts: &[Q]) -> Locus {
        let zeros = pts
            .iter()
            .map(|v| {
                let root = Padic::from_rational(p, v, 22);
                LocusZero {
                    disk: root.residue().unwrap(),
                    root,
                    multiplicity: 1,
                    certified: true,
                    rational_guess: Some(v.clone()),
                    residuals: vec![],
                }
            })
            .collect();
        Locus {
            p,
            policy: PadicPolicy::default(),
            functions: vec![],
            zeros,
        }
    }

    #[test]
    fn minus_one_is_not_symmetric() {
        for p in [5, 7] {
            assert!(s3_symmetrize(&locus(p, &[qi(-1)])).is_empty());
            assert!(s3_symmetrize(&locus(p, &[])).is_empty());
            let full = locus(p, &[qi(-1), qi(2), q(1, 2)]);
            let s = s3_symmetrize(&full);
            assert_eq!(s.rationals(), full.rationals());
            assert_eq!(s3_symmetrize(&s).rationals(), s.rationals());
        }
    }

    #[test]
    fn maps_agree_with_rational_action() {
        let p = 7;
        for z in [qi(3), q(2, 5), qi(-4)] {
            let pz = Padic::from_rational(p, &z, 20);
            for s in S3Map::ALL {
                let a = s.apply(&pz).unwrap();
                let b = Padic::from_rational(p, &s.apply_q(&z).unwrap(), 20);
                assert!(a.sub(&b).valuation() >= 18, "{s} at {z}");
            }
            assert_eq!(S3Orbit::of(&pz).images.len(), 6);
        }
        assert_eq!(S3Map::Inverse.apply_q(&Q::zero()), None);
    }
}
